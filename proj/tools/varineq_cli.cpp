// varineq - solver library for variable inequalities
// Licensed under Apache 2.0

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "varineq/runspec.hpp"

namespace {

int log_verbosity() {
  const char* env = std::getenv("VARINEQ_LOG");
  if (!env) return 0;
  try {
    return std::stoi(env);
  } catch (...) {
    return 0;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"varineq: subgradient-projection solver for variable inequalities"};

  std::string spec_path;
  app.add_option("--spec", spec_path, "path to a JSON run spec")->required();

  std::optional<std::string> variant;
  app.add_option("--variant", variant, "override the projection rule (R or S)")
      ->check(CLI::IsMember({"R", "S"}));
  std::optional<int> max_iter;
  app.add_option("--max-iter", max_iter, "override the iteration cap");
  std::optional<double> step_tol;
  app.add_option("--step-tol", step_tol, "override the step-norm stop tolerance");
  std::optional<double> residual_tol;
  app.add_option("--residual-tol", residual_tol, "override the residual stop tolerance");
  std::optional<std::string> trace_path;
  app.add_option("--trace", trace_path, "write the iteration trace CSV here");
  std::optional<std::string> summary_path;
  app.add_option("--summary", summary_path, "write the run summary JSON here");
  bool dump_spec = false;
  app.add_flag("--dump-spec", dump_spec,
               "print the normalized spec (with overrides applied) and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    varineq::RunSpec spec = varineq::load_runspec(spec_path);
    if (variant)
      spec.config.variant = (*variant == "S") ? varineq::Variant::S : varineq::Variant::R;
    if (max_iter) spec.config.max_iter = *max_iter;
    if (step_tol) spec.config.step_tol = *step_tol;
    if (residual_tol) spec.config.residual_tol = *residual_tol;
    if (trace_path) spec.trace_path = *trace_path;
    if (summary_path) spec.summary_path = *summary_path;
    spec.config.validate();

    if (dump_spec) {
      std::cout << varineq::dump_runspec(spec).dump(2) << "\n";
      return 0;
    }
    return varineq::run(spec, std::cerr, log_verbosity());
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

// varineq - solver library for variable inequalities
// Licensed under Apache 2.0

#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "varineq/solver.hpp"

namespace varineq {

// A batch run description: a registered problem family plus numeric
// parameters, the feasible set, the solver configuration and output paths.
// Arbitrary user functions enter only through the library API; the file
// format deliberately covers the registered families only.
struct ScanSpec {
  Vec lo, hi;
  int resolution = 0;
  double tol = 0.0;
};

struct RunSpec {
  std::string family;  // affine_orthant | parabola_sector | paraboloid_flip

  // affine_orthant parameters
  std::optional<Mat> A;
  std::optional<Vec> b;
  // parabola_sector parameters
  double shift = 0.0;
  double scale = 1.0;

  // Overrides the family's default feasible set when present.
  std::optional<FeasibleSet> feasible;

  // "solve" (default) runs the configured algorithm from x0; "scan" runs the
  // brute-force grid oracle instead and writes its candidates as the CSV.
  std::string mode = "solve";
  std::optional<ScanSpec> scan;
  // In solve mode, also run the variant's trace audit against the family's
  // known solution and record the outcome in the summary.
  bool audit = false;

  Vec x0;
  SolverConfig config;

  std::optional<std::string> trace_path;
  std::optional<std::string> summary_path;
};

// JSON (de)serialization. parse_runspec throws std::invalid_argument with a
// diagnostic on malformed input; dump_runspec emits a spec that reloads to
// an equivalent RunSpec.
RunSpec parse_runspec(const nlohmann::json& j);
RunSpec load_runspec(const std::string& path);
nlohmann::json dump_runspec(const RunSpec& spec);

nlohmann::json feasible_to_json(const FeasibleSet& set);
FeasibleSet feasible_from_json(const nlohmann::json& j);

// Build the problem the spec describes (validates family and dimensions).
ProblemInstance instantiate(const RunSpec& spec);

// Fixed trace format: k, x_1..x_n, residual, step_norm, dist_to_known
// (empty when unknown); header row mandatory, 17 significant digits.
void write_trace_csv(const SolveResult& result, std::ostream& os);

nlohmann::json summary_json(const SolveResult& result);

// Execute the spec: solve, emit trace/summary files, log per verbosity
// (0 silent, 1 run summary, 2 per-iteration). Returns the process exit
// code: 0 when the solve succeeded, 1 otherwise.
int run(const RunSpec& spec, std::ostream& log, int verbosity);

}  // namespace varineq

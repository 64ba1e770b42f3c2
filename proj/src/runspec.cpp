// varineq - solver library for variable inequalities
// Licensed under Apache 2.0

#include "varineq/runspec.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "varineq/diagnostics.hpp"

namespace varineq {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument("runspec: " + what);
}

Vec vec_from_json(const json& j, const char* field) {
  if (!j.is_array()) fail(std::string(field) + " must be an array of numbers");
  Vec v(j.size());
  Eigen::Index i = 0;
  for (const auto& e : j) {
    if (!e.is_number()) fail(std::string(field) + " must contain numbers only");
    v(i++) = e.get<double>();
  }
  return v;
}

json vec_to_json(const Vec& v) {
  json j = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v(i));
  return j;
}

Mat mat_from_json(const json& j, const char* field) {
  if (!j.is_array() || j.empty()) fail(std::string(field) + " must be a nonempty array of rows");
  const auto cols = j.front().is_array() ? j.front().size() : 0;
  if (cols == 0) fail(std::string(field) + " rows must be nonempty arrays");
  Mat m(j.size(), cols);
  Eigen::Index r = 0;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != cols) fail(std::string(field) + " rows must agree in length");
    Eigen::Index c = 0;
    for (const auto& e : row) {
      if (!e.is_number()) fail(std::string(field) + " must contain numbers only");
      m(r, c++) = e.get<double>();
    }
    ++r;
  }
  return m;
}

json mat_to_json(const Mat& m) {
  json j = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) j.push_back(vec_to_json(m.row(r)));
  return j;
}

double positive_field(const json& j, const char* name, double fallback) {
  if (!j.contains(name)) return fallback;
  if (!j.at(name).is_number()) fail(std::string(name) + " must be a number");
  const double v = j.at(name).get<double>();
  if (!(v > 0.0)) fail(std::string(name) + " must be positive");
  return v;
}

void format_value(std::ostream& os, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  os << buf;
}

}  // namespace

FeasibleSet feasible_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type")) fail("feasible set needs a \"type\" tag");
  const std::string type = j.at("type").get<std::string>();
  if (type == "whole_space") {
    if (!j.contains("dim")) fail("whole_space needs \"dim\"");
    return FeasibleSet::whole_space(j.at("dim").get<int>());
  }
  if (type == "box")
    return FeasibleSet::box(vec_from_json(j.at("lo"), "lo"), vec_from_json(j.at("hi"), "hi"));
  if (type == "ball")
    return FeasibleSet::ball(vec_from_json(j.at("center"), "center"),
                             j.at("radius").get<double>());
  if (type == "polyhedron") {
    std::vector<Halfspace> faces;
    for (const auto& h : j.at("halfspaces"))
      faces.emplace_back(vec_from_json(h.at("a"), "a"), h.at("b").get<double>());
    return FeasibleSet::polyhedron(std::move(faces));
  }
  if (type == "intersection") {
    std::vector<FeasibleSet> members;
    for (const auto& m : j.at("members")) members.push_back(feasible_from_json(m));
    return FeasibleSet::intersection(std::move(members));
  }
  fail("unknown feasible set type \"" + type + "\"");
}

json feasible_to_json(const FeasibleSet& set) {
  return std::visit(
      [](const auto& node) -> json {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, FeasibleSet::WholeSpaceNode>) {
          return {{"type", "whole_space"}, {"dim", node.n}};
        } else if constexpr (std::is_same_v<T, FeasibleSet::BoxNode>) {
          return {{"type", "box"}, {"lo", vec_to_json(node.lo)}, {"hi", vec_to_json(node.hi)}};
        } else if constexpr (std::is_same_v<T, FeasibleSet::BallNode>) {
          return {{"type", "ball"},
                  {"center", vec_to_json(node.center)},
                  {"radius", node.radius}};
        } else if constexpr (std::is_same_v<T, FeasibleSet::PolyhedronNode>) {
          json faces = json::array();
          for (const auto& h : node.faces)
            faces.push_back({{"a", vec_to_json(h.a)}, {"b", h.b}});
          return {{"type", "polyhedron"}, {"halfspaces", std::move(faces)}};
        } else {
          json members = json::array();
          for (const auto& m : node.members) members.push_back(feasible_to_json(m));
          return {{"type", "intersection"}, {"members", std::move(members)}};
        }
      },
      set.node());
}

RunSpec parse_runspec(const json& j) {
  if (!j.is_object()) fail("top level must be an object");
  RunSpec spec;

  if (!j.contains("problem") || !j.at("problem").is_object())
    fail("missing \"problem\" object");
  const json& prob = j.at("problem");
  if (!prob.contains("family")) fail("problem needs a \"family\" name");
  spec.family = prob.at("family").get<std::string>();

  if (spec.family == "affine_orthant") {
    if (!prob.contains("A") || !prob.contains("b"))
      fail("affine_orthant needs \"A\" and \"b\"");
    spec.A = mat_from_json(prob.at("A"), "A");
    spec.b = vec_from_json(prob.at("b"), "b");
  } else if (spec.family == "parabola_sector") {
    spec.shift = prob.value("shift", 0.0);
    spec.scale = prob.value("scale", 1.0);
    if (!(spec.scale > 0.0)) fail("parabola_sector scale must be positive");
  } else if (spec.family == "paraboloid_flip") {
    // no parameters
  } else {
    fail("unknown problem family \"" + spec.family + "\"");
  }

  if (j.contains("feasible")) spec.feasible = feasible_from_json(j.at("feasible"));

  if (j.contains("mode")) {
    spec.mode = j.at("mode").get<std::string>();
    if (spec.mode != "solve" && spec.mode != "scan")
      fail("mode must be \"solve\" or \"scan\"");
  }
  if (j.contains("scan")) {
    const json& s = j.at("scan");
    ScanSpec scan;
    scan.lo = vec_from_json(s.at("lo"), "scan.lo");
    scan.hi = vec_from_json(s.at("hi"), "scan.hi");
    scan.resolution = s.at("resolution").get<int>();
    scan.tol = s.at("tol").get<double>();
    if (scan.resolution < 2) fail("scan.resolution must be >= 2");
    if (!(scan.tol > 0.0)) fail("scan.tol must be positive");
    spec.scan = std::move(scan);
  }
  if (spec.mode == "scan" && !spec.scan) fail("scan mode needs a \"scan\" block");
  spec.audit = j.value("audit", false);

  if (spec.mode == "solve") {
    if (!j.contains("x0")) fail("missing \"x0\"");
    spec.x0 = vec_from_json(j.at("x0"), "x0");
  } else if (j.contains("x0")) {
    spec.x0 = vec_from_json(j.at("x0"), "x0");
  }

  if (j.contains("variant")) {
    const std::string v = j.at("variant").get<std::string>();
    if (v == "R") spec.config.variant = Variant::R;
    else if (v == "S") spec.config.variant = Variant::S;
    else fail("variant must be \"R\" or \"S\"");
  }
  spec.config.step_tol = positive_field(j, "step_tol", spec.config.step_tol);
  spec.config.residual_tol = positive_field(j, "residual_tol", spec.config.residual_tol);
  spec.config.projection_tol =
      positive_field(j, "projection_tol", spec.config.projection_tol);
  spec.config.soundness_tol =
      positive_field(j, "soundness_tol", spec.config.soundness_tol);
  if (j.contains("max_iter")) {
    spec.config.max_iter = j.at("max_iter").get<int>();
    if (spec.config.max_iter < 1) fail("max_iter must be >= 1");
  }
  spec.config.validate();

  if (j.contains("trace")) spec.trace_path = j.at("trace").get<std::string>();
  if (j.contains("summary")) spec.summary_path = j.at("summary").get<std::string>();
  return spec;
}

RunSpec load_runspec(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open spec file \"" + path + "\"");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    fail(std::string("JSON parse error: ") + e.what());
  }
  return parse_runspec(j);
}

json dump_runspec(const RunSpec& spec) {
  json prob{{"family", spec.family}};
  if (spec.family == "affine_orthant") {
    prob["A"] = mat_to_json(*spec.A);
    prob["b"] = vec_to_json(*spec.b);
  } else if (spec.family == "parabola_sector") {
    prob["shift"] = spec.shift;
    prob["scale"] = spec.scale;
  }
  json j{{"problem", std::move(prob)},
         {"variant", std::string(to_string(spec.config.variant))},
         {"step_tol", spec.config.step_tol},
         {"residual_tol", spec.config.residual_tol},
         {"projection_tol", spec.config.projection_tol},
         {"soundness_tol", spec.config.soundness_tol},
         {"max_iter", spec.config.max_iter},
         {"mode", spec.mode}};
  if (spec.x0.size() > 0) j["x0"] = vec_to_json(spec.x0);
  if (spec.audit) j["audit"] = true;
  if (spec.scan)
    j["scan"] = json{{"lo", vec_to_json(spec.scan->lo)},
                     {"hi", vec_to_json(spec.scan->hi)},
                     {"resolution", spec.scan->resolution},
                     {"tol", spec.scan->tol}};
  if (spec.feasible) j["feasible"] = feasible_to_json(*spec.feasible);
  if (spec.trace_path) j["trace"] = *spec.trace_path;
  if (spec.summary_path) j["summary"] = *spec.summary_path;
  return j;
}

ProblemInstance instantiate(const RunSpec& spec) {
  if (spec.family == "affine_orthant") {
    FeasibleSet C = spec.feasible.value_or(
        FeasibleSet::whole_space(static_cast<int>(spec.A->cols())));
    return affine_orthant(*spec.A, *spec.b, std::move(C));
  }
  if (spec.family == "parabola_sector") {
    ProblemInstance p = parabola_sector(spec.shift, spec.scale);
    if (spec.feasible)
      return ProblemInstance(p.oracle, p.cone_map, *spec.feasible, p.name,
                             p.known_solution);
    return p;
  }
  if (spec.family == "paraboloid_flip") {
    ProblemInstance p = paraboloid_flip();
    if (spec.feasible)
      return ProblemInstance(p.oracle, p.cone_map, *spec.feasible, p.name,
                             p.known_solution);
    return p;
  }
  fail("unknown problem family \"" + spec.family + "\"");
}

void write_trace_csv(const SolveResult& result, std::ostream& os) {
  const Eigen::Index n = result.final_x.size();
  os << "k";
  for (Eigen::Index i = 0; i < n; ++i) os << ",x_" << (i + 1);
  os << ",residual,step_norm,dist_to_known\n";
  for (const auto& rec : result.trace) {
    os << rec.k;
    for (Eigen::Index i = 0; i < n; ++i) {
      os << ",";
      format_value(os, rec.x(i));
    }
    os << ",";
    format_value(os, rec.residual);
    os << ",";
    format_value(os, rec.step_norm);
    os << ",";
    if (rec.dist_to_known) format_value(os, *rec.dist_to_known);
    os << "\n";
  }
}

json summary_json(const SolveResult& result) {
  json j{{"status", std::string(to_string(result.status))},
         {"variant", std::string(to_string(result.variant))},
         {"final_x", vec_to_json(result.final_x)},
         {"iterations", result.iterations},
         {"start_projected", result.start_projected},
         {"success", result.success()},
         {"message", result.message}};
  if (!result.trace.empty()) {
    j["final_residual"] = result.trace.back().residual;
    if (result.trace.back().dist_to_known)
      j["dist_to_known"] = *result.trace.back().dist_to_known;
  }
  if (result.step_stop_sound) j["step_stop_sound"] = *result.step_stop_sound;
  return j;
}

namespace {

int run_scan(const RunSpec& spec, const ProblemInstance& p, std::ostream& log,
             int verbosity) {
  const ScanReport report = grid_solution_scan(p, spec.scan->lo, spec.scan->hi,
                                               spec.scan->resolution, spec.scan->tol);
  if (verbosity >= 1)
    log << p.name << " scan: " << report.candidates.size() << " candidates at tol "
        << report.tol << "\n";
  if (spec.trace_path) {
    std::ofstream f(*spec.trace_path);
    if (!f) fail("cannot open scan output \"" + *spec.trace_path + "\"");
    write_scan_csv(report, f);
  }
  if (spec.summary_path) {
    json j{{"mode", "scan"},
           {"problem", p.name},
           {"candidates", report.candidates.size()},
           {"resolution", report.resolution},
           {"tol", report.tol}};
    std::ofstream f(*spec.summary_path);
    if (!f) fail("cannot open summary output \"" + *spec.summary_path + "\"");
    f << j.dump(2) << "\n";
  }
  return 0;
}

json audit_json(const ProblemInstance& p, const SolveResult& result) {
  json j;
  const std::optional<Vec> x_ref = p.known_solution;
  if (result.variant == Variant::R) {
    if (x_ref) {
      const auto report = fejer_audit(result, *x_ref);
      j["fejer"] = {{"applicable", report.applicable},
                    {"worst_slack", report.worst_slack},
                    {"pass", report.pass()}};
    } else {
      j["fejer"] = {{"applicable", false},
                    {"note", "no known solution to audit against"}};
    }
  } else {
    const auto report = s_monotonicity_audit(result, x_ref);
    json entry{{"applicable", report.applicable},
               {"monotone", report.monotone()},
               {"pass", x_ref ? report.pass() : report.monotone()}};
    if (report.worst_ball_excess) entry["worst_ball_excess"] = *report.worst_ball_excess;
    j["s_monotonicity"] = std::move(entry);
  }
  return j;
}

}  // namespace

int run(const RunSpec& spec, std::ostream& log, int verbosity) {
  const ProblemInstance p = instantiate(spec);
  if (spec.mode == "scan") return run_scan(spec, p, log, verbosity);

  const SolveResult result = solve(p, spec.x0, spec.config);

  if (verbosity >= 2) {
    for (const auto& rec : result.trace) {
      log << "k=" << rec.k << " x=[";
      for (Eigen::Index i = 0; i < rec.x.size(); ++i)
        log << (i ? " " : "") << rec.x(i);
      log << "] residual=" << rec.residual << " step=" << rec.step_norm << "\n";
    }
  }
  if (verbosity >= 1) {
    log << p.name << " variant " << to_string(result.variant) << ": "
        << to_string(result.status) << " after " << result.iterations
        << " steps";
    if (!result.trace.empty()) log << ", residual " << result.trace.back().residual;
    log << "\n";
  }

  if (spec.trace_path) {
    std::ofstream f(*spec.trace_path);
    if (!f) fail("cannot open trace output \"" + *spec.trace_path + "\"");
    write_trace_csv(result, f);
  }
  if (spec.summary_path) {
    json j = summary_json(result);
    if (spec.audit) j["audits"] = audit_json(p, result);
    std::ofstream f(*spec.summary_path);
    if (!f) fail("cannot open summary output \"" + *spec.summary_path + "\"");
    f << j.dump(2) << "\n";
  }
  return result.success() ? 0 : 1;
}

}  // namespace varineq

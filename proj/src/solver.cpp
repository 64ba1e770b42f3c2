// varineq - solver library for variable inequalities
// Licensed under Apache 2.0

#include "varineq/solver.hpp"

#include <algorithm>
#include <cmath>

namespace varineq {

std::string_view to_string(Variant v) { return v == Variant::R ? "R" : "S"; }

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Solved: return "Solved";
    case SolveStatus::StoppedByStep: return "StoppedByStep";
    case SolveStatus::MaxIter: return "MaxIter";
    case SolveStatus::ProjectionFailure: return "ProjectionFailure";
    case SolveStatus::EmptyCut: return "EmptyCut";
  }
  return "Unknown";
}

void SolverConfig::validate() const {
  if (!(step_tol > 0.0) || !(residual_tol > 0.0) || !(projection_tol > 0.0) ||
      !(soundness_tol > 0.0))
    throw std::invalid_argument("SolverConfig: tolerances must be positive");
  if (max_iter < 1) throw std::invalid_argument("SolverConfig: max_iter must be >= 1");
  if (!(projection_tol < step_tol))
    throw std::invalid_argument("SolverConfig: projection_tol must stay below step_tol");
  if (projection_max_cycles < 1)
    throw std::invalid_argument("SolverConfig: projection_max_cycles must be >= 1");
}

namespace {

double iterate_residual(const ProblemInstance& p, const Vec& x, double residual_tol) {
  return residual(p, x, residual_tol);
}

}  // namespace

SolveResult solve(const ProblemInstance& p, const Vec& x0, const SolverConfig& cfg) {
  cfg.validate();
  if (x0.size() != p.oracle.n)
    throw std::invalid_argument("solve: x0 dimension != problem dimension");

  SolveResult result;
  result.variant = cfg.variant;

  Vec x = x0;
  if (!p.feasible.contains(x, cfg.projection_tol)) {
    x = project_set(p.feasible, x, cfg.projection_tol, cfg.projection_max_cycles);
    result.start_projected = true;
    result.message += "x0 infeasible; projected onto C. ";
  }
  result.start = x;

  const auto record = [&](int k, const Vec& xi, double r, double step) {
    if (!cfg.record_trace) return;
    IterationRecord rec{k, xi, r, step, std::nullopt};
    if (p.known_solution) rec.dist_to_known = (xi - *p.known_solution).norm();
    result.trace.push_back(std::move(rec));
  };

  for (int k = 0;; ++k) {
    double r;
    try {
      r = iterate_residual(p, x, cfg.residual_tol);
    } catch (const ProjectionError& e) {
      result.status = SolveStatus::ProjectionFailure;
      result.message += "residual evaluation failed: ";
      result.message += e.what();
      record(k, x, std::numeric_limits<double>::quiet_NaN(), 0.0);
      break;
    }

    if (r <= cfg.residual_tol) {
      record(k, x, r, 0.0);
      result.status = SolveStatus::Solved;
      break;
    }
    if (k == cfg.max_iter) {
      record(k, x, r, 0.0);
      result.status = SolveStatus::MaxIter;
      break;
    }

    const Mat U = p.oracle.subgradient(x);
    const CutSet cut = build_H_halfspaces(p, x, U);
    if (cut.empty) {
      record(k, x, r, 0.0);
      result.status = SolveStatus::EmptyCut;
      result.message +=
          "H(x, U) is empty: a degenerate row is violated, so the data breaks "
          "the solution-set containment. ";
      break;
    }

    // Member order fixed for reproducibility: C, then the H rows, then W.
    std::vector<FeasibleSet> members;
    members.push_back(p.feasible);
    if (!cut.rows.empty()) members.push_back(FeasibleSet::polyhedron(cut.rows));
    Vec base;
    if (cfg.variant == Variant::S) {
      if (auto w = localization_halfspace(x, result.start))
        members.push_back(FeasibleSet::halfspace(std::move(*w)));
      base = result.start;
    } else {
      base = x;
    }

    Vec next;
    try {
      next = dykstra_project(members, base, cfg.projection_tol,
                             cfg.projection_max_cycles);
    } catch (const ProjectionError& e) {
      record(k, x, r, 0.0);
      result.status = SolveStatus::ProjectionFailure;
      result.message += e.what();
      break;
    }

    const double step = (next - x).norm();
    record(k, x, r, step);
    x = std::move(next);
    ++result.iterations;

    if (step <= cfg.step_tol) {
      double r_final;
      bool sound;
      try {
        r_final = iterate_residual(p, x, cfg.residual_tol);
        sound = is_solution(p, x, cfg.soundness_tol);
      } catch (const ProjectionError&) {
        r_final = std::numeric_limits<double>::quiet_NaN();
        sound = false;
      }
      record(k + 1, x, r_final, 0.0);
      result.status = SolveStatus::StoppedByStep;
      result.step_stop_sound = sound;
      if (!sound)
        result.message += "step-based stop failed the confirming solution check. ";
      break;
    }
  }

  result.final_x = x;
  return result;
}

FejerReport fejer_audit(const SolveResult& result, const Vec& x_ref) {
  FejerReport report;
  if (result.variant != Variant::R) {
    report.note = "inapplicable: Fejer step inequality is a variant-R property";
    return report;
  }
  if (result.trace.size() < 2) {
    report.applicable = true;
    report.note = "vacuous: fewer than two trace records";
    return report;
  }
  report.applicable = true;
  for (size_t i = 0; i + 1 < result.trace.size(); ++i) {
    const Vec& xk = result.trace[i].x;
    const Vec& xk1 = result.trace[i + 1].x;
    const double dk2 = (xk - x_ref).squaredNorm();
    const double slack =
        (dk2 - (xk1 - xk).squaredNorm() - (xk1 - x_ref).squaredNorm()) /
        std::max(1.0, dk2);
    ++report.steps_checked;
    if (slack < report.worst_slack) {
      report.worst_slack = slack;
      report.worst_k = result.trace[i].k;
    }
  }
  return report;
}

SMonotonicityReport s_monotonicity_audit(const SolveResult& result,
                                         const std::optional<Vec>& x_ref) {
  SMonotonicityReport report;
  if (result.variant != Variant::S) {
    report.note = "inapplicable: distance monotonicity is a variant-S property";
    return report;
  }
  if (result.trace.empty()) {
    report.note = "inapplicable: no trace recorded";
    return report;
  }
  report.applicable = true;

  double prev = 0.0;
  bool have_prev = false;
  for (const auto& rec : result.trace) {
    const double d = (rec.x - result.start).norm();
    if (have_prev) {
      report.worst_monotonicity_violation =
          std::max(report.worst_monotonicity_violation, prev - d);
      ++report.steps_checked;
    }
    prev = d;
    have_prev = true;
  }

  if (x_ref) {
    const Vec center = 0.5 * (result.start + *x_ref);
    const double half_rho = 0.5 * (result.start - *x_ref).norm();
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& rec : result.trace)
      worst = std::max(worst, (rec.x - center).norm() - half_rho);
    report.worst_ball_excess = worst;
  }
  return report;
}

}  // namespace varineq

// varineq - solver library for variable inequalities
// Licensed under Apache 2.0

#pragma once

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "varineq/problems.hpp"

namespace varineq {

// The two projection rules of the conceptual algorithm:
//   R: x_{k+1} = P_{C and H(x_k, U_k)} (x_k)
//   S: x_{k+1} = P_{C and W(x_k) and H(x_k, U_k)} (x_0)
enum class Variant { R, S };

std::string_view to_string(Variant v);

struct SolverConfig {
  Variant variant = Variant::R;
  // Stop when ||x_{k+1} - x_k|| <= step_tol (the fixed-point criterion,
  // relaxed from exact equality for floating point).
  double step_tol = 1e-8;
  // Declare Solved as soon as the infeasibility residual drops below this.
  double residual_tol = 1e-9;
  int max_iter = 1000;
  // Inner Dykstra accuracy; must stay below step_tol so projection error
  // cannot masquerade as progress.
  double projection_tol = 1e-10;
  int projection_max_cycles = set_limits::kDykstraMaxCycles;
  // Tolerance of the confirming is_solution check on a step-based stop.
  double soundness_tol = 1e-6;
  bool record_trace = true;

  void validate() const;
};

struct IterationRecord {
  int k = 0;
  Vec x;
  double residual = 0.0;
  double step_norm = 0.0;  // ||x_{k+1} - x_k||; 0 on the terminal record
  std::optional<double> dist_to_known;
};

enum class SolveStatus { Solved, StoppedByStep, MaxIter, ProjectionFailure, EmptyCut };

std::string_view to_string(SolveStatus s);

struct SolveResult {
  SolveStatus status = SolveStatus::MaxIter;
  Vec final_x;
  std::vector<IterationRecord> trace;
  Variant variant = Variant::R;
  // Starting iterate actually used; equals the projection of the requested
  // x0 onto C when that was necessary.
  Vec start;
  bool start_projected = false;
  // Outcome of the confirming is_solution check on a StoppedByStep exit.
  std::optional<bool> step_stop_sound;
  int iterations = 0;  // projection steps taken
  std::string message;

  bool success() const {
    return status == SolveStatus::Solved ||
           (status == SolveStatus::StoppedByStep && step_stop_sound.value_or(false));
  }
};

// Run the conceptual algorithm from x0. x0 is projected onto C first when it
// is not already feasible (noted in the result). Deterministic given the
// config; safe to run concurrently on a shared immutable instance.
SolveResult solve(const ProblemInstance& p, const Vec& x0, const SolverConfig& cfg);

// Per-step audit of the Fejer inequality
//   ||x_{k+1} - x_ref||^2 <= ||x_k - x_ref||^2 - ||x_{k+1} - x_k||^2
// for a variant-R trace against a reference solution. slack_k is the amount
// by which the inequality holds, normalized by max(1, ||x_k - x_ref||^2);
// the audit passes when the worst slack is >= -1e-9.
struct FejerReport {
  bool applicable = false;
  std::string note;
  double worst_slack = std::numeric_limits<double>::infinity();
  int worst_k = -1;
  int steps_checked = 0;

  bool pass(double threshold = -1e-9) const {
    return applicable && worst_slack >= threshold;
  }
};
FejerReport fejer_audit(const SolveResult& result, const Vec& x_ref);

// Audit of the variant-S structure: ||x_k - x0|| must be nondecreasing, and
// with x_ref = P_{S*}(x0) every iterate must lie in the ball centered at
// (x0 + x_ref)/2 with radius ||x0 - x_ref||/2. Declines variant-R traces.
struct SMonotonicityReport {
  bool applicable = false;
  std::string note;
  double worst_monotonicity_violation = 0.0;  // max over k of d_k - d_{k+1}
  std::optional<double> worst_ball_excess;    // max over k of ||x_k - c|| - rho/2
  int steps_checked = 0;

  bool monotone(double tol = 1e-10) const {
    return applicable && worst_monotonicity_violation <= tol;
  }
  bool ball_ok(double tol = 1e-8) const {
    return applicable && (!worst_ball_excess || *worst_ball_excess <= tol);
  }
  bool pass() const { return monotone() && ball_ok(); }
};
SMonotonicityReport s_monotonicity_audit(const SolveResult& result,
                                         const std::optional<Vec>& x_ref);

}  // namespace varineq

// varineq - solver library for variable inequalities
// Licensed under Apache 2.0

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "varineq/cones.hpp"
#include "varineq/sets.hpp"

namespace varineq {

// Evaluation oracle for F : R^n -> R^m together with a subgradient oracle
// returning an m x n matrix U with F(x) - F(x0) - U(x - x0) in K(F(x0)) for
// all x. Both callables must be deterministic and safe for concurrent calls.
// Subgradients are supplied, not computed; check_subgradient_validity offers
// a sampled test of the claim.
struct VectorFunctionOracle {
  int n = 0;
  int m = 0;
  std::function<Vec(const Vec&)> F;
  std::function<Mat(const Vec&)> subgrad;

  Vec eval(const Vec& x) const;
  Mat subgradient(const Vec& x) const;
};

// The problem: find x in C with F(x) + K(F(x)) containing 0, i.e. F(x) lies
// in -K(F(x)). known_solution is test metadata, not consumed by the solver.
struct ProblemInstance {
  VectorFunctionOracle oracle;
  ConeMap cone_map;
  FeasibleSet feasible;
  std::string name;
  std::optional<Vec> known_solution;

  ProblemInstance(VectorFunctionOracle o, ConeMap map, FeasibleSet C,
                  std::string problem_name,
                  std::optional<Vec> solution = std::nullopt);
};

// The halfspace rows of H(x, U) = { z : F(x) + U (z - x) in -K(F(x)) }:
// one row <U^T u_i, z> <= <u_i, U x - F(x)> per facet normal u_i of
// K(F(x)). Rows with a vanishing normal are dropped when trivially
// satisfied; a violated vanishing row makes H empty (empty = true), which
// means the problem data breaks the solution-set containment the cut
// construction relies on.
struct CutSet {
  std::vector<Halfspace> rows;
  bool empty = false;
};
CutSet build_H_halfspaces(const ProblemInstance& p, const Vec& x, const Mat& U);

// W(x) = { z : <z - x, x0 - x> <= 0 }. Returns nullopt (whole space) when
// x == x0 exactly.
std::optional<Halfspace> localization_halfspace(const Vec& x_k, const Vec& x_0);

// Infeasibility residual ||F(x)_+|| from the Moreau split of F(x) with
// respect to K(F(x)); within tol of zero exactly when F(x) is in -K(F(x)).
double residual(const ProblemInstance& p, const Vec& x, double tol);

// x in C and residual(x) both within tol.
bool is_solution(const ProblemInstance& p, const Vec& x, double tol);

// ---- assumption checkers (report-only) ----

struct SubgradientReport {
  struct Violation {
    Vec x;
    Vec defect;  // F(x) - F(xbar) - U (x - xbar), outside K(F(xbar))
  };
  std::vector<Violation> violations;
  int samples_checked = 0;
  bool ok() const { return violations.empty(); }
};
SubgradientReport check_subgradient_validity(const ProblemInstance& p,
                                             const Vec& xbar, const Mat& U,
                                             std::span<const Vec> samples,
                                             double tol);

struct KConvexityReport {
  struct Violation {
    Vec x;
    Vec x_hat;
    double alpha;
    Vec defect;  // alpha F(x) + (1-alpha) F(xhat) - F(mid), outside K(F(mid))
  };
  std::vector<Violation> violations;
  int triples_checked = 0;
  bool ok() const { return violations.empty(); }
};
KConvexityReport check_k_convexity(const ProblemInstance& p,
                                   std::span<const std::pair<Vec, Vec>> pairs,
                                   std::span<const double> alphas, double tol);

// Sampled containment test of K(F(x_star)) inside K(F(x)) over sample
// points x in C. Exact for 2D cones (extreme rays); ray sampling otherwise.
// Only ever a check against the supplied candidate solution, since the full
// solution set is unknown.
struct A4Report {
  struct Violation {
    Vec x;
    Vec ray;  // ray of K(F(x_star)) missing from K(F(x))
  };
  std::vector<Violation> violations;
  int samples_checked = 0;
  bool ok() const { return violations.empty(); }
};
A4Report check_A4(const ProblemInstance& p, const Vec& x_star,
                  std::span<const Vec> samples, int ray_grid, double tol);

// ---- built-in problem families ----

// F(x) = A x - b with the constant nonnegative-orthant order; subgradient
// identically A. The solution set is { x in C : A x <= b }.
ProblemInstance affine_orthant(Mat A, Vec b, FeasibleSet C,
                               std::string name = "affine_orthant");

// n = 1, m = 2, C = R, F(x) = (t^2, t) with t = scale * (x - shift), ordered
// by the variable sector K(y) = { r (cos phi, sin phi) : phi in [0, theta(y)] },
// theta(y) = pi/2 when y1 = 0 and 3*pi/4 - arctan(y2^2 / y1^2)/2 otherwise.
// The unique solution is x = shift. The y1 = 0 branch uses exact equality;
// F's range only reaches y1 = 0 at the solution itself, so no small nonzero
// y1 ambiguity arises there.
ProblemInstance parabola_sector(double shift = 0.0, double scale = 1.0);

// n = 2, m = 2, C = [0,1]^2, F(x) = (x1^2 + x2^2 - 5, x2), with a cone map
// that flips from the nonnegative to the nonpositive orthant as y1 falls
// below -2 (sector interpolation in between). On C the composed cone is
// constantly the nonpositive orthant, so the convexity gap of F1 leaves the
// cone: a ready-made K-convexity violation fixture. Has no solution in C.
ProblemInstance paraboloid_flip();

// The sector cone map used by parabola_sector, exposed for diagnostics.
ConeMap parabola_sector_cone_map();

}  // namespace varineq

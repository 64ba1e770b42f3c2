// varineq - solver library for variable inequalities
// Licensed under Apache 2.0

#include "varineq/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace varineq {

namespace {
constexpr double kPi = std::numbers::pi;

double residual_inner_tol(double tol, double ynorm) {
  // One order tighter than the caller's tolerance, but never below the
  // floating-point floor of the Dykstra cycle measure.
  return std::clamp(0.1 * tol, 1e-14 * std::max(1.0, ynorm), 1e-10);
}

// Extreme rays of a 2D cone given by facet normals: rotate each normal a
// quarter turn and keep the direction the other facets admit.
std::vector<Vec> extreme_rays_2d(const PolyhedralCone& cone) {
  std::vector<Vec> rays;
  for (const auto& u : cone.dual_normals()) {
    for (const double sign : {1.0, -1.0}) {
      Vec r(2);
      r << -sign * u(1), sign * u(0);
      if (!cone_contains(cone, r, 1e-12)) continue;
      const bool duplicate =
          std::any_of(rays.begin(), rays.end(),
                      [&](const Vec& s) { return (s - r).norm() < 1e-9; });
      if (!duplicate) rays.push_back(std::move(r));
    }
  }
  return rays;
}
}  // namespace

Vec VectorFunctionOracle::eval(const Vec& x) const {
  if (x.size() != n)
    throw std::invalid_argument("VectorFunctionOracle: argument dimension mismatch");
  Vec y = F(x);
  if (y.size() != m)
    throw std::invalid_argument("VectorFunctionOracle: F returned wrong dimension");
  return y;
}

Mat VectorFunctionOracle::subgradient(const Vec& x) const {
  if (x.size() != n)
    throw std::invalid_argument("VectorFunctionOracle: argument dimension mismatch");
  Mat U = subgrad(x);
  if (U.rows() != m || U.cols() != n)
    throw std::invalid_argument("VectorFunctionOracle: subgradient must be m x n");
  return U;
}

ProblemInstance::ProblemInstance(VectorFunctionOracle o, ConeMap map,
                                 FeasibleSet C, std::string problem_name,
                                 std::optional<Vec> solution)
    : oracle(std::move(o)),
      cone_map(std::move(map)),
      feasible(std::move(C)),
      name(std::move(problem_name)),
      known_solution(std::move(solution)) {
  if (feasible.dim() != oracle.n)
    throw std::invalid_argument("ProblemInstance: feasible set dimension != oracle.n");
  if (cone_map.dim() != oracle.m)
    throw std::invalid_argument("ProblemInstance: cone map dimension != oracle.m");
  if (known_solution && known_solution->size() != oracle.n)
    throw std::invalid_argument("ProblemInstance: known_solution dimension != oracle.n");
}

CutSet build_H_halfspaces(const ProblemInstance& p, const Vec& x, const Mat& U) {
  if (x.size() != p.oracle.n || U.rows() != p.oracle.m || U.cols() != p.oracle.n)
    throw std::invalid_argument("build_H_halfspaces: dimension mismatch");

  const Vec y = p.oracle.eval(x);
  const PolyhedralCone cone = p.cone_map(y);
  const Vec Ux = U * x;

  const double normal_tol = 1e-12 * std::max(1.0, U.norm());
  const double rhs_tol = 1e-12 * std::max(1.0, y.norm() + Ux.norm());

  CutSet cut;
  for (const auto& u : cone.dual_normals()) {
    Vec normal = U.transpose() * u;
    const double rhs = u.dot(Ux - y);
    if (normal.norm() <= normal_tol) {
      if (rhs >= -rhs_tol) continue;  // trivially satisfied for every z
      cut.rows.clear();
      cut.empty = true;  // 0 <= rhs fails for every z: H is empty
      return cut;
    }
    cut.rows.emplace_back(std::move(normal), rhs);
  }
  return cut;
}

std::optional<Halfspace> localization_halfspace(const Vec& x_k, const Vec& x_0) {
  if (x_k.size() != x_0.size())
    throw std::invalid_argument("localization_halfspace: dimension mismatch");
  if ((x_k.array() == x_0.array()).all())
    return std::nullopt;  // W(x0) is the whole space
  const Vec normal = x_0 - x_k;
  return Halfspace(normal, normal.dot(x_k));
}

double residual(const ProblemInstance& p, const Vec& x, double tol) {
  const Vec y = p.oracle.eval(x);
  const PolyhedralCone cone = p.cone_map(y);
  const auto split = moreau_split(cone, y, residual_inner_tol(tol, y.norm()));
  return split.plus.norm();
}

bool is_solution(const ProblemInstance& p, const Vec& x, double tol) {
  const Vec projected = project_set(p.feasible, x, residual_inner_tol(tol, x.norm()));
  if ((x - projected).norm() > tol) return false;
  return residual(p, x, tol) <= tol;
}

SubgradientReport check_subgradient_validity(const ProblemInstance& p,
                                             const Vec& xbar, const Mat& U,
                                             std::span<const Vec> samples,
                                             double tol) {
  const Vec y_bar = p.oracle.eval(xbar);
  const PolyhedralCone cone = p.cone_map(y_bar);
  SubgradientReport report;
  for (const Vec& x : samples) {
    ++report.samples_checked;
    Vec defect = p.oracle.eval(x) - y_bar - U * (x - xbar);
    if (!cone_contains(cone, defect, tol))
      report.violations.push_back({x, std::move(defect)});
  }
  return report;
}

KConvexityReport check_k_convexity(const ProblemInstance& p,
                                   std::span<const std::pair<Vec, Vec>> pairs,
                                   std::span<const double> alphas, double tol) {
  KConvexityReport report;
  for (const auto& [x, x_hat] : pairs) {
    const Vec fx = p.oracle.eval(x);
    const Vec fx_hat = p.oracle.eval(x_hat);
    for (const double alpha : alphas) {
      if (alpha < 0.0 || alpha > 1.0)
        throw std::invalid_argument("check_k_convexity: alpha outside [0, 1]");
      ++report.triples_checked;
      const Vec mid = alpha * x + (1.0 - alpha) * x_hat;
      Vec defect = alpha * fx + (1.0 - alpha) * fx_hat - p.oracle.eval(mid);
      if (!cone_contains(p.cone_map(p.oracle.eval(mid)), defect, tol))
        report.violations.push_back({x, x_hat, alpha, std::move(defect)});
    }
  }
  return report;
}

A4Report check_A4(const ProblemInstance& p, const Vec& x_star,
                  std::span<const Vec> samples, int ray_grid, double tol) {
  const PolyhedralCone cone_star = p.cone_map(p.oracle.eval(x_star));

  std::vector<Vec> rays;
  if (cone_star.dim() == 2) {
    rays = extreme_rays_2d(cone_star);
  } else {
    // Sampled members of K(F(x*)): projections of a deterministic direction
    // grid onto the cone.
    std::mt19937_64 rng(20240501u);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int i = 0; i < ray_grid; ++i) {
      Vec d(cone_star.dim());
      for (Eigen::Index j = 0; j < d.size(); ++j) d(j) = gauss(rng);
      Vec r = project_cone(cone_star, d, 1e-12);
      const double norm = r.norm();
      if (norm > 1e-9) rays.push_back(r / norm);
    }
  }

  A4Report report;
  for (const Vec& x : samples) {
    if (!p.feasible.contains(x, tol)) continue;  // (A4) quantifies over C only
    ++report.samples_checked;
    const PolyhedralCone cone_x = p.cone_map(p.oracle.eval(x));
    for (const Vec& r : rays) {
      if (!cone_contains(cone_x, r, tol)) {
        report.violations.push_back({x, r});
        break;
      }
    }
  }
  return report;
}

ProblemInstance affine_orthant(Mat A, Vec b, FeasibleSet C, std::string name) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (b.size() != m)
    throw std::invalid_argument("affine_orthant: b dimension != rows of A");
  VectorFunctionOracle oracle{
      n, m, [A, b](const Vec& x) -> Vec { return A * x - b; },
      [A](const Vec&) -> Mat { return A; }};
  return ProblemInstance(std::move(oracle),
                         constant_cone_map(orthant_cone(m), "nonnegative orthant"),
                         std::move(C), std::move(name));
}

ConeMap parabola_sector_cone_map() {
  return ConeMap(
      2,
      [](const Vec& y) {
        const double theta =
            y(0) == 0.0 ? kPi / 2.0
                        : 0.75 * kPi - 0.5 * std::atan((y(1) * y(1)) / (y(0) * y(0)));
        return sector_cone(0.0, theta);
      },
      "sector [0, theta(y)]");
}

ProblemInstance parabola_sector(double shift, double scale) {
  if (!(scale > 0.0))
    throw std::invalid_argument("parabola_sector: scale must be positive");
  VectorFunctionOracle oracle{
      1, 2,
      [shift, scale](const Vec& x) -> Vec {
        const double t = scale * (x(0) - shift);
        Vec y(2);
        y << t * t, t;
        return y;
      },
      [shift, scale](const Vec& x) -> Mat {
        Mat U(2, 1);
        U << 2.0 * scale * scale * (x(0) - shift), scale;
        return U;
      }};
  Vec solution(1);
  solution << shift;
  return ProblemInstance(std::move(oracle), parabola_sector_cone_map(),
                         FeasibleSet::whole_space(1), "parabola_sector",
                         std::move(solution));
}

ProblemInstance paraboloid_flip() {
  VectorFunctionOracle oracle{
      2, 2,
      [](const Vec& x) -> Vec {
        Vec y(2);
        y << x(0) * x(0) + x(1) * x(1) - 5.0, x(1);
        return y;
      },
      [](const Vec& x) -> Mat {
        Mat U(2, 2);
        U << 2.0 * x(0), 2.0 * x(1), 0.0, 1.0;
        return U;
      }};
  ConeMap map(
      2,
      [](const Vec& y) {
        if (y(0) >= -1.0) return orthant_cone(2);
        if (y(0) <= -2.0) return sector_cone(kPi, 1.5 * kPi);
        return sector_cone(-kPi - kPi * y(0), -0.5 * kPi - kPi * y(0));
      },
      "orthant flipping across y1");
  Vec lo = Vec::Zero(2), hi = Vec::Ones(2);
  return ProblemInstance(std::move(oracle), std::move(map),
                         FeasibleSet::box(std::move(lo), std::move(hi)),
                         "paraboloid_flip");
}

}  // namespace varineq

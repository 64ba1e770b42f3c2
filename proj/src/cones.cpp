// varineq - solver library for variable inequalities
// Licensed under Apache 2.0

#include "varineq/cones.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "varineq/detail/dykstra.hpp"

namespace varineq {

namespace {

std::string dim_mismatch(const char* op, int cone_dim, Eigen::Index vec_dim) {
  std::ostringstream os;
  os << op << ": cone has dimension " << cone_dim << " but vector has "
     << vec_dim;
  return os.str();
}

}  // namespace

PolyhedralCone::PolyhedralCone(int dim, std::vector<Vec> dual_normals)
    : dim_(dim), dual_normals_(std::move(dual_normals)) {
  if (dim_ <= 0) throw std::invalid_argument("PolyhedralCone: dimension must be positive");
  if (dual_normals_.empty())
    throw std::invalid_argument("PolyhedralCone: at least one dual normal required");
  for (auto& u : dual_normals_) {
    if (u.size() != dim_)
      throw std::invalid_argument(dim_mismatch("PolyhedralCone", dim_, u.size()));
    const double norm = u.norm();
    if (!(norm > 0.0))
      throw std::invalid_argument("PolyhedralCone: dual normal with zero norm");
    u /= norm;
  }
}

PolyhedralCone PolyhedralCone::negated() const {
  std::vector<Vec> flipped;
  flipped.reserve(dual_normals_.size());
  for (const auto& u : dual_normals_) flipped.push_back(-u);
  return PolyhedralCone(dim_, std::move(flipped));
}

PolyhedralCone sector_cone(double theta_lo, double theta_hi) {
  const double width = theta_hi - theta_lo;
  if (width < 0.0 || width >= std::numbers::pi)
    throw std::invalid_argument(
        "sector_cone: angular width must lie in [0, pi); wider sectors are "
        "not pointed and have no facet-normal representation");
  Vec lo_normal(2), hi_normal(2);
  lo_normal << -std::sin(theta_lo), std::cos(theta_lo);
  hi_normal << std::sin(theta_hi), -std::cos(theta_hi);
  return PolyhedralCone(2, {lo_normal, hi_normal});
}

PolyhedralCone orthant_cone(int m) {
  std::vector<Vec> normals;
  normals.reserve(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) normals.push_back(Vec::Unit(m, i));
  return PolyhedralCone(m, std::move(normals));
}

bool cone_contains(const PolyhedralCone& cone, const Vec& y, double tol) {
  if (y.size() != cone.dim())
    throw std::invalid_argument(dim_mismatch("cone_contains", cone.dim(), y.size()));
  const double slack = tol * std::max(1.0, y.norm());
  for (const auto& u : cone.dual_normals())
    if (u.dot(y) < -slack) return false;
  return true;
}

bool in_minus_cone(const PolyhedralCone& cone, const Vec& y, double tol) {
  if (y.size() != cone.dim())
    throw std::invalid_argument(dim_mismatch("in_minus_cone", cone.dim(), y.size()));
  const double slack = tol * std::max(1.0, y.norm());
  for (const auto& u : cone.dual_normals())
    if (u.dot(y) > slack) return false;
  return true;
}

bool dual_contains(const PolyhedralCone& cone, const Vec& z, double tol) {
  if (z.size() != cone.dim())
    throw std::invalid_argument(dim_mismatch("dual_contains", cone.dim(), z.size()));

  const auto r = static_cast<Eigen::Index>(cone.dual_normals().size());
  Mat G(cone.dim(), r);
  for (Eigen::Index i = 0; i < r; ++i) G.col(i) = cone.dual_normals()[static_cast<size_t>(i)];

  // min_{lambda >= 0} 0.5 ||G lambda - z||^2 by accelerated projected
  // gradient. The Frobenius norm of the Gram matrix bounds the gradient
  // Lipschitz constant. Ill-conditioned normal sets (nearly opposite
  // normals) make plain descent crawl, so every few iterations the active
  // support is polished by an exact least-squares solve and the KKT
  // conditions are tested; a verified support terminates finitely.
  const Mat gram = G.transpose() * G;
  const Vec gz = G.transpose() * z;
  const double step = 1.0 / std::max(1.0, gram.norm());
  const double scale = std::max(1.0, z.norm());
  const double kkt_tol = 1e-12 * scale;

  const auto try_support = [&](const Vec& lam) -> std::optional<double> {
    std::vector<Eigen::Index> support;
    for (Eigen::Index i = 0; i < r; ++i)
      if (lam(i) > 0.0) support.push_back(i);
    Vec mu;
    Vec res_vec = -z;
    if (!support.empty()) {
      Mat Gs(G.rows(), static_cast<Eigen::Index>(support.size()));
      for (size_t i = 0; i < support.size(); ++i) Gs.col(static_cast<Eigen::Index>(i)) = G.col(support[i]);
      mu = Gs.completeOrthogonalDecomposition().solve(z);
      if (mu.minCoeff() < -kkt_tol) return std::nullopt;
      res_vec = Gs * mu.cwiseMax(0.0) - z;
    }
    const Vec grad = G.transpose() * res_vec;
    if (grad.minCoeff() < -kkt_tol) return std::nullopt;
    return res_vec.norm();
  };

  Vec lambda = Vec::Zero(r);
  Vec momentum = lambda;
  double t_prev = 1.0;
  const double stat_tol = 1e-13 * scale;
  double best_residual = z.norm();
  bool stationary = false;
  for (int it = 0; it < cone_limits::kNnlsMaxIter; ++it) {
    const Vec grad = gram * momentum - gz;
    Vec next = (momentum - step * grad).cwiseMax(0.0);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_prev * t_prev));
    momentum = next + ((t_prev - 1.0) / t_next) * (next - lambda);
    const double move = (next - lambda).norm();
    lambda = std::move(next);
    t_prev = t_next;
    best_residual = std::min(best_residual, (G * lambda - z).norm());
    if (move <= stat_tol) {
      stationary = true;
      break;
    }
    if (it % 25 == 24) {
      if (const auto exact = try_support(lambda)) {
        best_residual = std::min(best_residual, *exact);
        stationary = true;
        break;
      }
    }
  }
  // Membership is certified by any lambda with a small enough residual; the
  // negative answer needs stationarity, since the residual only bounds the
  // distance from above.
  if (best_residual <= tol * scale) return true;
  if (stationary) return false;
  throw NnlsError("dual_contains: NNLS iteration cap reached undecided",
                  best_residual);
}

Vec project_cone(const PolyhedralCone& cone, const Vec& y, double tol) {
  if (y.size() != cone.dim())
    throw std::invalid_argument(dim_mismatch("project_cone", cone.dim(), y.size()));

  std::vector<detail::DenseProjector> projectors;
  projectors.reserve(cone.dual_normals().size());
  for (const auto& u : cone.dual_normals()) {
    projectors.push_back([u](const Vec& p) -> Vec {
      const double v = u.dot(p);
      if (v >= 0.0) return p;
      return p - v * u;
    });
  }
  auto res = detail::dykstra(y, projectors, tol, cone_limits::kDykstraMaxCycles);
  if (!res.converged) {
    throw ProjectionError(
        "project_cone: Dykstra cycle cap exceeded",
        std::vector<double>(res.point.data(), res.point.data() + res.point.size()),
        res.displacement);
  }
  return res.point;
}

MoreauSplit moreau_split(const PolyhedralCone& cone, const Vec& y, double tol) {
  MoreauSplit split;
  split.minus = project_cone(cone.negated(), y, tol);
  split.plus = y - split.minus;
  return split;
}

PolyhedralCone ConeMap::operator()(const Vec& y) const {
  if (y.size() != dim_)
    throw std::invalid_argument(dim_mismatch("ConeMap", dim_, y.size()));
  PolyhedralCone cone = eval_(y);
  if (cone.dim() != dim_)
    throw std::invalid_argument("ConeMap: eval returned cone of wrong dimension");
  return cone;
}

ConeMap constant_cone_map(PolyhedralCone cone, std::string descriptor) {
  const int dim = cone.dim();
  return ConeMap(
      dim, [c = std::move(cone)](const Vec&) { return c; }, std::move(descriptor));
}

}  // namespace varineq

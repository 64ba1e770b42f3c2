// varineq - solver library for variable inequalities
// Licensed under Apache 2.0

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "varineq/errors.hpp"

namespace varineq {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Closed convex cone K = { y : <u_i, y> >= 0 for all i } in R^m, stored by
// its facet normals u_i (equivalently, generators of the dual cone K*).
// Normals are kept at unit Euclidean norm. Duplicate or opposite normals are
// allowed; they encode lower-dimensional cones. Pointedness is not verified.
// Immutable after construction.
class PolyhedralCone {
 public:
  PolyhedralCone(int dim, std::vector<Vec> dual_normals);

  int dim() const { return dim_; }
  const std::vector<Vec>& dual_normals() const { return dual_normals_; }

  // Cone with the same facets mirrored through the origin, i.e. -K.
  PolyhedralCone negated() const;

 private:
  int dim_;
  std::vector<Vec> dual_normals_;
};

// The angular sector { r (cos phi, sin phi) : r >= 0, phi in [lo, hi] } in
// R^2. Requires 0 <= hi - lo < pi so the halfspace representation
// { (-sin lo, cos lo), (sin hi, -cos hi) } is exact and the cone pointed.
PolyhedralCone sector_cone(double theta_lo, double theta_hi);

// The nonnegative orthant of R^m (facet normals = standard basis).
PolyhedralCone orthant_cone(int m);

// y in K up to tol * max(1, ||y||) slack on each facet.
bool cone_contains(const PolyhedralCone& cone, const Vec& y, double tol);

// y in -K, i.e. <u_i, y> <= tol * max(1, ||y||) for all facets.
bool in_minus_cone(const PolyhedralCone& cone, const Vec& y, double tol);

// z in K* = conic hull of the stored normals, decided by nonnegative least
// squares: min_{lambda >= 0} || sum lambda_i u_i - z ||, membership iff the
// residual is <= tol * max(1, ||z||). Throws NnlsError if the projected
// gradient iteration fails to settle within its cap.
bool dual_contains(const PolyhedralCone& cone, const Vec& z, double tol);

// Euclidean projection of y onto K, computed by Dykstra cycles over the
// facet halfspaces. Throws ProjectionError past the cycle cap.
Vec project_cone(const PolyhedralCone& cone, const Vec& y, double tol);

struct MoreauSplit {
  Vec plus;   // component in K*
  Vec minus;  // component in -K, orthogonal to plus
};

// Unique decomposition y = plus + minus with plus in K*, minus in -K and
// <plus, minus> = 0. minus is the projection of y onto -K.
MoreauSplit moreau_split(const PolyhedralCone& cone, const Vec& y, double tol);

// Point-to-cone application y -> K(y). eval must be pure: equal inputs must
// produce identical normal lists, and concurrent invocation must be safe.
// Closedness of the graph is the supplier's obligation (see
// diagnostics::cone_map_continuity_smoke for a sampled sanity check).
class ConeMap {
 public:
  ConeMap(int dim, std::function<PolyhedralCone(const Vec&)> eval,
          std::string descriptor)
      : dim_(dim), eval_(std::move(eval)), descriptor_(std::move(descriptor)) {}

  PolyhedralCone operator()(const Vec& y) const;

  int dim() const { return dim_; }
  const std::string& descriptor() const { return descriptor_; }

 private:
  int dim_;
  std::function<PolyhedralCone(const Vec&)> eval_;
  std::string descriptor_;
};

// Constant map y -> K.
ConeMap constant_cone_map(PolyhedralCone cone, std::string descriptor = "constant");

namespace cone_limits {
inline constexpr int kDykstraMaxCycles = 10000;
inline constexpr int kNnlsMaxIter = 10000;
}  // namespace cone_limits

}  // namespace varineq

// varineq - solver library for variable inequalities
// Licensed under Apache 2.0

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <vector>

namespace varineq::detail {

using DenseProjector = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct DykstraResult {
  Eigen::VectorXd point;
  int cycles = 0;
  // Birgin-Raydan cycle measure: sqrt(sum over sets of ||Deltac_i||^2),
  // where c_i are the correction vectors. Zero exactly at the fixed point.
  double displacement = 0.0;
  bool converged = false;
};

// Dykstra's alternating projection with correction terms over a family of
// exact projectors. Converges to the nearest point of the intersection when
// it is nonempty; the corrections diverge when it is empty.
inline DykstraResult dykstra(const Eigen::VectorXd& x,
                             std::span<const DenseProjector> projectors,
                             double tol, int max_cycles) {
  DykstraResult out;
  if (projectors.empty()) {
    out.point = x;
    out.converged = true;
    return out;
  }
  if (projectors.size() == 1) {
    out.point = projectors[0](x);
    out.cycles = 1;
    out.converged = true;
    return out;
  }

  const auto r = static_cast<std::ptrdiff_t>(projectors.size());
  Eigen::VectorXd z = x;
  std::vector<Eigen::VectorXd> corrections(
      projectors.size(), Eigen::VectorXd::Zero(x.size()));

  for (int cycle = 1; cycle <= max_cycles; ++cycle) {
    double delta_sq = 0.0;
    for (std::ptrdiff_t i = 0; i < r; ++i) {
      const Eigen::VectorXd t = z + corrections[static_cast<size_t>(i)];
      z = projectors[static_cast<size_t>(i)](t);
      const Eigen::VectorXd c_new = t - z;
      delta_sq += (c_new - corrections[static_cast<size_t>(i)]).squaredNorm();
      corrections[static_cast<size_t>(i)] = c_new;
    }
    out.cycles = cycle;
    out.displacement = std::sqrt(delta_sq);
    if (out.displacement <= tol) {
      out.converged = true;
      break;
    }
  }
  out.point = std::move(z);
  return out;
}

}  // namespace varineq::detail

// varineq - solver library for variable inequalities
// Licensed under Apache 2.0

#include "varineq/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>

namespace varineq {

namespace {

constexpr std::int64_t kMaxGridNodes = 2'000'000;

double angular_distance(const Vec& u, const Vec& v) {
  const double c = std::clamp(u.dot(v), -1.0, 1.0);
  return std::acos(c);
}

// max over one set of the angular distance to the other, symmetrized.
double normal_set_deviation(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  const auto one_sided = [](const std::vector<Vec>& from, const std::vector<Vec>& to) {
    double worst = 0.0;
    for (const auto& u : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& v : to) best = std::min(best, angular_distance(u, v));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

void write_value(std::ostream& os, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  os << buf;
}

}  // namespace

ScanReport grid_solution_scan(const ProblemInstance& p, const Vec& lo,
                              const Vec& hi, int resolution, double tol) {
  const int n = p.oracle.n;
  if (n > 3)
    throw std::invalid_argument("grid_solution_scan: only n <= 3 is supported");
  if (lo.size() != n || hi.size() != n)
    throw std::invalid_argument("grid_solution_scan: box dimension mismatch");
  if (((hi - lo).array() < 0.0).any())
    throw std::invalid_argument("grid_solution_scan: needs lo <= hi");
  if (resolution < 2)
    throw std::invalid_argument("grid_solution_scan: resolution must be >= 2");

  std::int64_t total = 1;
  for (int axis = 0; axis < n; ++axis) {
    total *= resolution;
    if (total > kMaxGridNodes)
      throw std::invalid_argument("grid_solution_scan: grid too large");
  }

  ScanReport report;
  report.lo = lo;
  report.hi = hi;
  report.resolution = resolution;
  report.tol = tol;

  Vec node(n);
  std::vector<int> idx(static_cast<size_t>(n), 0);
  for (std::int64_t flat = 0; flat < total; ++flat) {
    std::int64_t rem = flat;
    for (int axis = 0; axis < n; ++axis) {
      idx[static_cast<size_t>(axis)] = static_cast<int>(rem % resolution);
      rem /= resolution;
    }
    for (int axis = 0; axis < n; ++axis)
      node(axis) = lo(axis) + (hi(axis) - lo(axis)) * idx[static_cast<size_t>(axis)] /
                                  (resolution - 1);
    if (!p.feasible.contains(node, tol)) continue;
    const double r = residual(p, node, tol);
    if (r <= tol) report.candidates.push_back({node, r});
  }
  return report;
}

bool convexity_of_S_star_check(const ProblemInstance& p, const ScanReport& report,
                               int samples, double tol, std::uint64_t seed) {
  if (report.candidates.size() < 2) return true;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<size_t> pick(0, report.candidates.size() - 1);
  std::uniform_real_distribution<double> ratio(0.0, 1.0);

  const int n = static_cast<int>(report.lo.size());
  for (int s = 0; s < samples; ++s) {
    const Vec& a = report.candidates[pick(rng)].x;
    const Vec& b = report.candidates[pick(rng)].x;
    const double t = ratio(rng);
    const Vec mid = t * a + (1.0 - t) * b;

    // Snap to the nearest grid node; the scan only certifies nodes.
    Vec snapped(n);
    for (int axis = 0; axis < n; ++axis) {
      const double h = (report.hi(axis) - report.lo(axis)) / (report.resolution - 1);
      double pos = h > 0.0 ? std::round((mid(axis) - report.lo(axis)) / h) : 0.0;
      pos = std::clamp(pos, 0.0, static_cast<double>(report.resolution - 1));
      snapped(axis) = report.lo(axis) + pos * h;
    }
    if (!is_solution(p, snapped, tol)) return false;
  }
  return true;
}

bool ContinuityReport::ok() const {
  return std::none_of(entries.begin(), entries.end(),
                      [](const Entry& e) { return e.flagged; });
}

double ContinuityReport::max_deviation() const {
  double worst = 0.0;
  for (const auto& e : entries) worst = std::max(worst, e.deviation);
  return worst;
}

ContinuityReport cone_map_continuity_smoke(const ConeMap& map,
                                           std::span<const Vec> points,
                                           double perturbation,
                                           std::optional<double> threshold) {
  if (!(perturbation > 0.0))
    throw std::invalid_argument("cone_map_continuity_smoke: perturbation must be positive");
  ContinuityReport report;
  report.threshold = threshold.value_or(100.0 * perturbation);

  for (const Vec& y : points) {
    const auto base = map(y).dual_normals();
    double worst = 0.0;
    for (Eigen::Index j = 0; j < y.size(); ++j) {
      for (const double sign : {1.0, -1.0}) {
        Vec probe = y;
        probe(j) += sign * perturbation;
        worst = std::max(worst, normal_set_deviation(base, map(probe).dual_normals()));
      }
    }
    report.entries.push_back({y, worst, worst > report.threshold});
  }
  return report;
}

void write_scan_csv(const ScanReport& report, std::ostream& os) {
  const int n = static_cast<int>(report.lo.size());
  for (int axis = 0; axis < n; ++axis) os << "x_" << (axis + 1) << ",";
  os << "residual\n";
  for (const auto& c : report.candidates) {
    for (int axis = 0; axis < n; ++axis) {
      write_value(os, c.x(axis));
      os << ",";
    }
    write_value(os, c.residual);
    os << "\n";
  }
}

}  // namespace varineq

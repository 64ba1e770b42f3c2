// varineq - solver library for variable inequalities
// Licensed under Apache 2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "varineq/problems.hpp"

namespace varineq {

// Output of a brute-force solution scan: every grid node that passed
// is_solution at the stated tolerance, with its residual.
struct ScanCandidate {
  Vec x;
  double residual = 0.0;
};

struct ScanReport {
  std::vector<ScanCandidate> candidates;
  Vec lo, hi;
  int resolution = 0;  // nodes per axis, endpoints included
  double tol = 0.0;
};

// Evaluate is_solution on every node of a uniform grid over [lo, hi].
// Desk-scale oracle: rejects n > 3 and grids above ~2e6 nodes. This is the
// repo's designated independent reference for solver results.
ScanReport grid_solution_scan(const ProblemInstance& p, const Vec& lo,
                              const Vec& hi, int resolution, double tol);

// Sampled convexity check of the scanned candidate set: random pairs and
// mixing ratios, with the midpoint snapped to its nearest grid node before
// the is_solution test (the candidate set lives on the grid).
bool convexity_of_S_star_check(const ProblemInstance& p, const ScanReport& report,
                               int samples, double tol,
                               std::uint64_t seed = 20240502u);

// Sampled necessary-condition probe of cone-map continuity: compares the
// facet normals of K(y) and K(y +/- perturbation * e_j) by a symmetric
// angular Hausdorff distance and flags jumps above the threshold
// (default 100 * perturbation). Sampling cannot certify closedness of the
// graph; a clean report is merely the absence of an obvious jump.
struct ContinuityReport {
  struct Entry {
    Vec y;
    double deviation = 0.0;
    bool flagged = false;
  };
  std::vector<Entry> entries;
  double threshold = 0.0;

  bool ok() const;
  double max_deviation() const;
};
ContinuityReport cone_map_continuity_smoke(
    const ConeMap& map, std::span<const Vec> points, double perturbation,
    std::optional<double> threshold = std::nullopt);

// Node coordinates + residual, one row per candidate, 17 significant digits.
void write_scan_csv(const ScanReport& report, std::ostream& os);

}  // namespace varineq

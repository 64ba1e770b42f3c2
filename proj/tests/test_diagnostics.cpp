// varineq - solver library for variable inequalities
// Licensed under Apache 2.0

#include "varineq/diagnostics.hpp"

#include <doctest.h>

#include <sstream>

#include "varineq/solver.hpp"
#include "support/oracles.hpp"

using namespace varineq;
using namespace varineq::testing;

namespace {

Vec scalar(double v) {
  Vec x(1);
  x << v;
  return x;
}

// 1 - x^2 <= 0 under the fixed scalar orthant order: solutions |x| >= 1,
// a deliberately non-convex solution set for the convexity check.
ProblemInstance nonconvex_band() {
  VectorFunctionOracle oracle{
      1, 1, [](const Vec& x) -> Vec { return scalar(1.0 - x(0) * x(0)); },
      [](const Vec& x) -> Mat {
        Mat U(1, 1);
        U << -2.0 * x(0);
        return U;
      }};
  return ProblemInstance(std::move(oracle), constant_cone_map(orthant_cone(1)),
                         FeasibleSet::whole_space(1), "nonconvex_band");
}

}  // namespace

TEST_CASE("scan of the sector instance rediscovers the lone solution") {
  const auto p = parabola_sector();
  const auto report = grid_solution_scan(p, scalar(-3.0), scalar(3.0), 601, 1e-4);
  REQUIRE_FALSE(report.candidates.empty());
  bool has_origin = false;
  for (const auto& c : report.candidates) {
    CHECK(std::abs(c.x(0)) <= 1e-2 + 1e-12);
    CHECK(c.residual <= 1e-4);
    if (c.x(0) == 0.0) has_origin = true;
  }
  CHECK(has_origin);
}

TEST_CASE("scan of an affine instance marks exactly the feasible nodes") {
  const auto p = affine_orthant(Mat::Identity(2, 2), vec2(1, 1),
                                FeasibleSet::whole_space(2));
  const auto report = grid_solution_scan(p, vec2(-2, -2), vec2(2, 2), 41, 1e-9);
  // nodes live on a 0.1 lattice; solutions are both coordinates <= 1
  int expected = 0;
  for (int i = 0; i < 41; ++i)
    for (int j = 0; j < 41; ++j)
      if (-2.0 + 0.1 * i <= 1.0 + 1e-12 && -2.0 + 0.1 * j <= 1.0 + 1e-12) ++expected;
  CHECK(static_cast<int>(report.candidates.size()) == expected);
  for (const auto& c : report.candidates) {
    CHECK(c.x(0) <= 1.0 + 1e-9);
    CHECK(c.x(1) <= 1.0 + 1e-9);
  }
}

TEST_CASE("scan of an infeasible instance is empty") {
  // solutions need x <= -1 but C = [0, 1]^2
  const auto p = affine_orthant(Mat::Identity(2, 2), -Vec::Ones(2),
                                FeasibleSet::box(Vec::Zero(2), Vec::Ones(2)));
  const auto report = grid_solution_scan(p, vec2(-2, -2), vec2(2, 2), 81, 1e-6);
  CHECK(report.candidates.empty());
}

TEST_CASE("scan guards its scale limits") {
  VectorFunctionOracle oracle{4, 1, [](const Vec&) { return scalar(0.0); },
                              [](const Vec&) { return Mat::Zero(1, 4); }};
  const ProblemInstance p(std::move(oracle), constant_cone_map(orthant_cone(1)),
                          FeasibleSet::whole_space(4), "4d");
  CHECK_THROWS_AS(grid_solution_scan(p, Vec::Zero(4), Vec::Ones(4), 5, 1e-6),
                  std::invalid_argument);

  const auto q = parabola_sector();
  CHECK_THROWS_AS(grid_solution_scan(q, scalar(0.0), scalar(1.0), 1, 1e-6),
                  std::invalid_argument);
}

TEST_CASE("solver final iterates land within one grid cell of a scan candidate") {
  const auto p = parabola_sector();
  const auto report = grid_solution_scan(p, scalar(-3.0), scalar(3.0), 601, 1e-4);
  const double cell = 6.0 / 600.0;
  SolverConfig cfg;
  cfg.residual_tol = 1e-13;
  cfg.projection_tol = 1e-12;
  for (const double x0 : {1.0, 2.0, -3.0}) {
    const auto result = solve(p, scalar(x0), cfg);
    REQUIRE(result.status == SolveStatus::Solved);
    const bool near_candidate =
        std::any_of(report.candidates.begin(), report.candidates.end(),
                    [&](const ScanCandidate& c) {
                      return (c.x - result.final_x).norm() <= cell + 1e-12;
                    });
    CHECK(near_candidate);
  }
}

TEST_CASE("doubling the resolution keeps the solution region") {
  const auto p = parabola_sector();
  const auto coarse = grid_solution_scan(p, scalar(-3.0), scalar(3.0), 601, 1e-4);
  const auto fine = grid_solution_scan(p, scalar(-3.0), scalar(3.0), 1201, 1e-4);
  CHECK(!coarse.candidates.empty());
  CHECK(!fine.candidates.empty());
  // every coarse candidate stays within half a fine cell of a fine candidate
  const double fine_cell = 6.0 / 1200.0;
  for (const auto& c : coarse.candidates) {
    const bool covered = std::any_of(fine.candidates.begin(), fine.candidates.end(),
                                     [&](const ScanCandidate& f) {
                                       return (f.x - c.x).norm() <= fine_cell + 1e-12;
                                     });
    CHECK(covered);
  }
}

TEST_CASE("convexity check of the candidate set") {
  const auto p = parabola_sector();
  const auto singleton = grid_solution_scan(p, scalar(-3.0), scalar(3.0), 601, 1e-4);
  CHECK(convexity_of_S_star_check(p, singleton, 100, 1e-4));

  const auto affine = affine_orthant(Mat::Identity(2, 2), vec2(1, 1),
                                     FeasibleSet::whole_space(2));
  const auto orthant_report = grid_solution_scan(affine, vec2(-2, -2), vec2(2, 2), 41, 1e-9);
  CHECK(convexity_of_S_star_check(affine, orthant_report, 200, 1e-6));

  const auto band = nonconvex_band();
  const auto band_report = grid_solution_scan(band, scalar(-3.0), scalar(3.0), 241, 1e-9);
  CHECK_FALSE(band_report.candidates.empty());
  CHECK_FALSE(convexity_of_S_star_check(band, band_report, 200, 1e-6));
}

TEST_CASE("continuity smoke test: constant, smooth, and stepped maps") {
  const auto constant = constant_cone_map(orthant_cone(2));
  std::vector<Vec> points{vec2(1, 1), vec2(-2, 0.5), vec2(0.1, -3)};
  const auto flat = cone_map_continuity_smoke(constant, points, 1e-6);
  CHECK(flat.ok());
  CHECK(flat.max_deviation() == 0.0);

  // Smooth sector map: deviations track the numerical derivative of theta.
  const auto smooth = parabola_sector_cone_map();
  const double h = 1e-6;
  std::vector<Vec> near_one{vec2(1, 1)};
  const auto report = cone_map_continuity_smoke(smooth, near_one, h);
  CHECK(report.ok());
  const auto theta = [](const Vec& y) {
    return 0.75 * kPi - 0.5 * std::atan((y(1) * y(1)) / (y(0) * y(0)));
  };
  double expected = 0.0;
  for (Eigen::Index j = 0; j < 2; ++j) {
    for (const double sign : {1.0, -1.0}) {
      Vec probe = near_one[0];
      probe(j) += sign * h;
      expected = std::max(expected, std::abs(theta(probe) - theta(near_one[0])));
    }
  }
  CHECK(report.entries[0].deviation == doctest::Approx(expected).epsilon(1e-6));

  // A step in theta is flagged at points whose probes straddle the jump.
  ConeMap stepped(
      2,
      [](const Vec& y) {
        return sector_cone(0.0, y(0) > 1.0 ? 0.3 : 1.2);
      },
      "stepped");
  std::vector<Vec> at_jump{vec2(1.0, 0.0)};
  const auto flagged = cone_map_continuity_smoke(stepped, at_jump, 1e-6);
  CHECK_FALSE(flagged.ok());
  CHECK(flagged.entries[0].deviation > 0.5);
}

TEST_CASE("scan CSV export") {
  const auto p = parabola_sector();
  const auto report = grid_solution_scan(p, scalar(-1.0), scalar(1.0), 201, 1e-4);
  std::ostringstream os;
  write_scan_csv(report, os);
  const std::string text = os.str();
  CHECK(text.rfind("x_1,residual\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') ==
        static_cast<long>(report.candidates.size()) + 1);
}

// varineq - solver library for variable inequalities
// Licensed under Apache 2.0

#include "varineq/problems.hpp"

#include <doctest.h>

#include "support/oracles.hpp"

using namespace varineq;
using namespace varineq::testing;

namespace {

Vec scalar(double v) {
  Vec x(1);
  x << v;
  return x;
}

bool satisfies_rows(const std::vector<Halfspace>& rows, const Vec& z, double tol) {
  return std::all_of(rows.begin(), rows.end(),
                     [&](const Halfspace& h) { return h.signed_violation(z) <= tol; });
}

ProblemInstance identity_orthant_2d() {
  return affine_orthant(Mat::Identity(2, 2), Vec::Zero(2), FeasibleSet::whole_space(2));
}

}  // namespace

TEST_CASE("the sector cone map matches the printed theta") {
  const auto map = parabola_sector_cone_map();
  // theta(1,1) = 3*pi/4 - arctan(1)/2 = 5*pi/8
  const auto cone = map(vec2(1, 1));
  const auto expect = sector_cone(0.0, 5.0 * kPi / 8.0);
  CHECK((cone.dual_normals()[0] - expect.dual_normals()[0]).norm() < 1e-14);
  CHECK((cone.dual_normals()[1] - expect.dual_normals()[1]).norm() < 1e-14);
  // y1 = 0 branch takes the value pi/2 exactly
  const auto at_zero = map(vec2(0, 0));
  const auto quarter = sector_cone(0.0, kPi / 2.0);
  CHECK((at_zero.dual_normals()[1] - quarter.dual_normals()[1]).norm() < 1e-14);
}

TEST_CASE("build_H at x=1 on the sector instance: the cut is z <= 0") {
  const auto p = parabola_sector();
  const Mat U = p.oracle.subgradient(scalar(1.0));
  CHECK(U(0, 0) == doctest::Approx(2.0));
  CHECK(U(1, 0) == doctest::Approx(1.0));

  const auto cut = build_H_halfspaces(p, scalar(1.0), U);
  REQUIRE_FALSE(cut.empty);
  REQUIRE(cut.rows.size() == 2);

  // Substitution oracle: z in H iff F(1) + U (z - 1) lies in -K(F(1)),
  // checked angularly against the sector [pi, pi + 5*pi/8].
  for (double z = -2.0; z <= 2.0; z += 0.01) {
    const Vec image = vec2(2.0 * z - 1.0, z);
    const bool in_minus_k = sector_angle_contains(kPi, kPi + 5.0 * kPi / 8.0, image);
    CHECK(satisfies_rows(cut.rows, scalar(z), 1e-9) == in_minus_k);
  }
  // The binding row is z <= 0; the other is slack until z = 0.414...
  CHECK(satisfies_rows(cut.rows, scalar(-1e-9), 1e-12));
  CHECK_FALSE(satisfies_rows(cut.rows, scalar(1e-3), 1e-12));
  CHECK(satisfies_rows({cut.rows[1]}, scalar(0.41), 1e-12));
  CHECK_FALSE(satisfies_rows({cut.rows[1]}, scalar(0.42), 1e-12));
}

TEST_CASE("build_H in the constant-orthant linear case is the solution set") {
  const auto p = identity_orthant_2d();
  const auto cut = build_H_halfspaces(p, vec2(1, 1), Mat::Identity(2, 2));
  REQUIRE(cut.rows.size() == 2);
  // H = { z1 <= 0, z2 <= 0 }
  CHECK(satisfies_rows(cut.rows, vec2(-0.3, -4.0), 1e-12));
  CHECK_FALSE(satisfies_rows(cut.rows, vec2(0.1, -1.0), 1e-12));
  CHECK_FALSE(satisfies_rows(cut.rows, vec2(-1.0, 0.1), 1e-12));
}

TEST_CASE("a solution belongs to its own cut") {
  const auto p = parabola_sector();
  const auto cut = build_H_halfspaces(p, scalar(0.0), p.oracle.subgradient(scalar(0.0)));
  CHECK_FALSE(cut.empty);
  CHECK(satisfies_rows(cut.rows, scalar(0.0), 1e-12));
}

TEST_CASE("degenerate zero rows: dropped when slack, empty cut when violated") {
  Mat A(1, 1);
  A << 0.0;
  // F(x) = -1 everywhere: already a solution, the zero row drops.
  const auto solvable =
      affine_orthant(A, scalar(1.0), FeasibleSet::whole_space(1));
  const auto slack_cut = build_H_halfspaces(solvable, scalar(0.3), A);
  CHECK_FALSE(slack_cut.empty);
  CHECK(slack_cut.rows.empty());

  // F(x) = +1 everywhere: no z can repair the row, H is empty.
  const auto unsolvable =
      affine_orthant(A, scalar(-1.0), FeasibleSet::whole_space(1));
  const auto empty_cut = build_H_halfspaces(unsolvable, scalar(0.3), A);
  CHECK(empty_cut.empty);
  CHECK(empty_cut.rows.empty());
}

TEST_CASE("localization halfspace") {
  CHECK_FALSE(localization_halfspace(vec2(1, 2), vec2(1, 2)).has_value());

  const auto w1 = localization_halfspace(vec2(1, 0), vec2(0, 0));
  REQUIRE(w1.has_value());
  // { z : z1 >= 1 }
  CHECK(w1->contains(vec2(1.5, 7.0), 1e-12));
  CHECK(w1->contains(vec2(1.0, -2.0), 1e-12));
  CHECK_FALSE(w1->contains(vec2(0.9, 0.0), 1e-12));

  const auto w2 = localization_halfspace(vec2(0, 2), vec2(0, 0));
  REQUIRE(w2.has_value());
  CHECK(w2->contains(vec2(-3.0, 2.5), 1e-12));
  CHECK_FALSE(w2->contains(vec2(0.0, 1.9), 1e-12));
}

TEST_CASE("residual values") {
  const auto p = parabola_sector();
  CHECK(residual(p, scalar(0.0), 1e-10) <= 1e-10);

  // Constant cone, fixed image (3, -2): the orthant split leaves (3, 0).
  Mat A = Mat::Zero(2, 1);
  const auto constant = affine_orthant(A, vec2(-3, 2), FeasibleSet::whole_space(1));
  CHECK(residual(constant, scalar(0.7), 1e-10) == doctest::Approx(3.0).epsilon(1e-9));

  // x = 1: distance from F(1) = (1,1) to -K(F(1)), cross-checked by the
  // brute-force grid oracle over the sector [pi, pi + 5*pi/8].
  const double r1 = residual(p, scalar(1.0), 1e-10);
  const auto in_minus_k = [&](const Vec& w) {
    return sector_angle_contains(kPi, kPi + 5.0 * kPi / 8.0, w);
  };
  const Vec nearest = grid_polish_project_2d(in_minus_k, vec2(1, 1), vec2(-3, -3), vec2(3, 3));
  CHECK(r1 == doctest::Approx((vec2(1, 1) - nearest).norm()).epsilon(1e-6));
  CHECK(r1 > 0.1);
}

TEST_CASE("residual vanishes exactly when F(x) is in -K(F(x))") {
  const auto p = parabola_sector();
  std::mt19937_64 rng(31u);
  for (int trial = 0; trial < 200; ++trial) {
    const Vec x = random_vec(rng, 1, 2.0);
    const Vec y = p.oracle.eval(x);
    const bool member = in_minus_cone(p.cone_map(y), y, 1e-9);
    const double r = residual(p, x, 1e-10);
    if (member)
      CHECK(r <= 1e-8 * std::max(1.0, y.norm()));
    else
      CHECK(r > 1e-10);
  }
}

TEST_CASE("is_solution on the sector instance and on an affine vertex") {
  const auto p = parabola_sector();
  CHECK(is_solution(p, scalar(0.0), 1e-8));
  CHECK_FALSE(is_solution(p, scalar(0.5), 1e-8));

  // x = b-vertex of { A x <= b } with A = I: the residual is exactly zero.
  const auto affine = affine_orthant(Mat::Identity(2, 2), vec2(1, 2),
                                     FeasibleSet::box(vec2(-5, -5), vec2(5, 5)));
  CHECK(is_solution(affine, vec2(1, 2), 1e-9));
  CHECK(is_solution(affine, vec2(0, 0), 1e-9));
  CHECK_FALSE(is_solution(affine, vec2(1.1, 0), 1e-9));
}

TEST_CASE("subgradient validity checker") {
  std::mt19937_64 rng(32u);

  // Affine case: the linearization is exact, no violations on any samples.
  Mat A(2, 2);
  A << 1, 2, -1, 0.5;
  const auto affine = affine_orthant(A, vec2(0.5, -0.3), FeasibleSet::whole_space(2));
  std::vector<Vec> samples;
  for (int i = 0; i < 50; ++i) samples.push_back(random_vec(rng, 2, 3.0));
  CHECK(check_subgradient_validity(affine, vec2(0.2, 0.4), A, samples, 1e-10).ok());

  // The printed subgradient of the sector instance validates on a grid.
  const auto p = parabola_sector();
  std::vector<Vec> grid;
  for (double x = -3.0; x <= 3.0; x += 0.25) grid.push_back(scalar(x));
  for (double xbar = -2.0; xbar <= 2.0; xbar += 0.5)
    CHECK(check_subgradient_validity(p, scalar(xbar),
                                     p.oracle.subgradient(scalar(xbar)), grid, 1e-10)
              .ok());

  // A wrong matrix is caught: at xbar = 0 with U = (5, 1)^T the defect at
  // x = 1 is (-4, 0), outside K(F(0)).
  Mat bad(2, 1);
  bad << 5.0, 1.0;
  const auto report = check_subgradient_validity(p, scalar(0.0), bad, grid, 1e-10);
  CHECK_FALSE(report.ok());
  const bool flags_x1 = std::any_of(
      report.violations.begin(), report.violations.end(), [](const auto& v) {
        return std::abs(v.x(0) - 1.0) < 1e-12 && (v.defect - vec2(-4, 0)).norm() < 1e-12;
      });
  CHECK(flags_x1);
}

TEST_CASE("K-convexity checker") {
  std::mt19937_64 rng(33u);
  const std::vector<double> alphas{0.0, 0.25, 0.5, 0.75, 1.0};

  Mat A(2, 3);
  A << 1, 0, 2, -1, 1, 0;
  const auto affine = affine_orthant(A, vec2(1, 1), FeasibleSet::whole_space(3));
  std::vector<std::pair<Vec, Vec>> pairs3;
  for (int i = 0; i < 30; ++i)
    pairs3.emplace_back(random_vec(rng, 3, 2.0), random_vec(rng, 3, 2.0));
  CHECK(check_k_convexity(affine, pairs3, alphas, 1e-9).ok());

  const auto p = parabola_sector();
  std::vector<std::pair<Vec, Vec>> pairs1;
  for (int i = 0; i < 50; ++i) {
    std::uniform_real_distribution<double> range(-3.0, 3.0);
    pairs1.emplace_back(scalar(range(rng)), scalar(range(rng)));
  }
  CHECK(check_k_convexity(p, pairs1, alphas, 1e-9).ok());

  // The flipping-cone fixture: on its box the composed cone is the
  // nonpositive orthant while the convexity gap points the other way.
  const auto flip = paraboloid_flip();
  std::vector<std::pair<Vec, Vec>> pairs2;
  pairs2.emplace_back(vec2(0, 0), vec2(1, 1));
  for (int i = 0; i < 20; ++i) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    pairs2.emplace_back(vec2(unit(rng), unit(rng)), vec2(unit(rng), unit(rng)));
  }
  const auto report = check_k_convexity(flip, pairs2, alphas, 1e-9);
  CHECK_FALSE(report.ok());
}

TEST_CASE("A4 containment checker") {
  std::mt19937_64 rng(34u);

  const auto constant = identity_orthant_2d();
  std::vector<Vec> samples2;
  for (int i = 0; i < 40; ++i) samples2.push_back(random_vec(rng, 2, 2.0));
  CHECK(check_A4(constant, vec2(-1, -1), samples2, 32, 1e-9).ok());

  const auto p = parabola_sector();
  std::vector<Vec> samples1;
  for (double x = -3.0; x <= 3.0; x += 0.1) samples1.push_back(scalar(x));
  CHECK(check_A4(p, scalar(0.0), samples1, 32, 1e-9).ok());

  // Adversarial map: the sector narrows as ||y|| grows, so the cone at the
  // candidate solution pokes out of the cone at far samples.
  VectorFunctionOracle oracle{
      1, 2,
      [](const Vec& x) -> Vec { return vec2(1.0 + x(0) * x(0), 1.0); },
      [](const Vec& x) -> Mat {
        Mat U(2, 1);
        U << 2.0 * x(0), 0.0;
        return U;
      }};
  ConeMap shrinking(
      2,
      [](const Vec& y) {
        return sector_cone(0.0, 1.5 - std::min(1.0, 0.1 * y.norm()));
      },
      "narrowing sector");
  const ProblemInstance adversarial(std::move(oracle), std::move(shrinking),
                                    FeasibleSet::whole_space(1), "adversarial");
  const auto report = check_A4(adversarial, scalar(0.0), samples1, 32, 1e-9);
  CHECK_FALSE(report.ok());
}

TEST_CASE("cut containment and self-exclusion on the sector family") {
  // Containment properties: the known solution satisfies every cut built at
  // any point, and a non-solution violates its own cut.
  std::mt19937_64 rng(35u);
  for (const double shift : {0.0, 0.7, -1.3}) {
    const auto p = parabola_sector(shift);
    const Vec x_star = *p.known_solution;
    for (int trial = 0; trial < 100; ++trial) {
      const Vec x = x_star + random_vec(rng, 1, 2.0);
      const auto cut = build_H_halfspaces(p, x, p.oracle.subgradient(x));
      REQUIRE_FALSE(cut.empty);
      CHECK(satisfies_rows(cut.rows, x_star, 1e-8));
      if (!is_solution(p, x, 1e-9))
        CHECK_FALSE(satisfies_rows(cut.rows, x, -1e-12));
    }
  }
}

TEST_CASE("scaled and shifted sector variants keep their advertised solution") {
  for (const double shift : {0.0, 2.5, -0.4}) {
    for (const double scale : {1.0, 0.5, 3.0}) {
      const auto p = parabola_sector(shift, scale);
      CHECK(is_solution(p, scalar(shift), 1e-9));
      CHECK_FALSE(is_solution(p, scalar(shift + 0.2), 1e-9));
    }
  }
}

TEST_CASE("problem construction validates dimensions") {
  CHECK_THROWS_AS(affine_orthant(Mat::Identity(2, 2), Vec::Zero(3),
                                 FeasibleSet::whole_space(2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(affine_orthant(Mat::Identity(2, 2), Vec::Zero(2),
                                 FeasibleSet::whole_space(3)),
                  std::invalid_argument);
  const auto p = parabola_sector();
  CHECK_THROWS_AS(p.oracle.eval(vec2(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(build_H_halfspaces(p, scalar(0.0), Mat::Identity(2, 2)),
                  std::invalid_argument);
}

// varineq - solver library for variable inequalities
// Licensed under Apache 2.0

#include "varineq/sets.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "varineq/detail/dykstra.hpp"

namespace varineq {

Halfspace::Halfspace(Vec normal, double offset) : a(std::move(normal)), b(offset) {
  const double norm = a.norm();
  if (!(norm > 0.0))
    throw std::invalid_argument("Halfspace: normal must have positive norm");
  a /= norm;
  b /= norm;
}

bool Halfspace::contains(const Vec& x, double tol) const {
  return signed_violation(x) <= tol * std::max(1.0, x.norm());
}

Vec Halfspace::project(const Vec& x) const {
  const double v = signed_violation(x);
  if (v <= 0.0) return x;
  return x - v * a;
}

FeasibleSet FeasibleSet::whole_space(int n) {
  if (n <= 0) throw std::invalid_argument("FeasibleSet: dimension must be positive");
  return FeasibleSet(WholeSpaceNode{n});
}

FeasibleSet FeasibleSet::box(Vec lo, Vec hi) {
  if (lo.size() != hi.size() || lo.size() == 0)
    throw std::invalid_argument("FeasibleSet::box: bound dimensions disagree");
  if (((hi - lo).array() < 0.0).any())
    throw std::invalid_argument("FeasibleSet::box: needs lo <= hi componentwise");
  return FeasibleSet(BoxNode{std::move(lo), std::move(hi)});
}

FeasibleSet FeasibleSet::ball(Vec center, double radius) {
  if (center.size() == 0 || !(radius > 0.0))
    throw std::invalid_argument("FeasibleSet::ball: needs positive radius");
  return FeasibleSet(BallNode{std::move(center), radius});
}

FeasibleSet FeasibleSet::polyhedron(std::vector<Halfspace> faces) {
  if (faces.empty())
    throw std::invalid_argument("FeasibleSet::polyhedron: needs at least one halfspace");
  const auto n = faces.front().a.size();
  for (const auto& h : faces)
    if (h.a.size() != n)
      throw std::invalid_argument("FeasibleSet::polyhedron: mixed dimensions");
  return FeasibleSet(PolyhedronNode{std::move(faces)});
}

FeasibleSet FeasibleSet::halfspace(Halfspace h) {
  return polyhedron({std::move(h)});
}

FeasibleSet FeasibleSet::intersection(std::vector<FeasibleSet> members) {
  if (members.empty())
    throw std::invalid_argument("FeasibleSet::intersection: needs at least one member");
  const int n = members.front().dim();
  for (const auto& m : members)
    if (m.dim() != n)
      throw std::invalid_argument("FeasibleSet::intersection: mixed dimensions");
  return FeasibleSet(IntersectionNode{std::move(members)});
}

int FeasibleSet::dim() const {
  return std::visit(
      [](const auto& node) -> int {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, WholeSpaceNode>) return node.n;
        else if constexpr (std::is_same_v<T, BoxNode>) return static_cast<int>(node.lo.size());
        else if constexpr (std::is_same_v<T, BallNode>) return static_cast<int>(node.center.size());
        else if constexpr (std::is_same_v<T, PolyhedronNode>)
          return static_cast<int>(node.faces.front().a.size());
        else
          return node.members.front().dim();
      },
      node_);
}

bool FeasibleSet::contains(const Vec& x, double tol) const {
  if (x.size() != dim())
    throw std::invalid_argument("FeasibleSet::contains: dimension mismatch");
  const double slack = tol * std::max(1.0, x.norm());
  return std::visit(
      [&](const auto& node) -> bool {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, WholeSpaceNode>) {
          return true;
        } else if constexpr (std::is_same_v<T, BoxNode>) {
          return ((x - node.lo).array() >= -slack).all() &&
                 ((node.hi - x).array() >= -slack).all();
        } else if constexpr (std::is_same_v<T, BallNode>) {
          return (x - node.center).norm() <= node.radius + slack;
        } else if constexpr (std::is_same_v<T, PolyhedronNode>) {
          return std::all_of(node.faces.begin(), node.faces.end(),
                             [&](const Halfspace& h) { return h.contains(x, tol); });
        } else {
          return std::all_of(node.members.begin(), node.members.end(),
                             [&](const FeasibleSet& m) { return m.contains(x, tol); });
        }
      },
      node_);
}

namespace {

Vec project_box(const FeasibleSet::BoxNode& box, const Vec& x) {
  return x.cwiseMax(box.lo).cwiseMin(box.hi);
}

Vec project_ball(const FeasibleSet::BallNode& ball, const Vec& x) {
  const Vec d = x - ball.center;
  const double dist = d.norm();
  if (dist <= ball.radius) return x;
  return ball.center + (ball.radius / dist) * d;
}

// Decompose a set into pieces with closed-form projections. Whole-space
// pieces vanish; polyhedra split into their facets; intersections recurse.
void flatten_atoms(const FeasibleSet& set,
                   std::vector<detail::DenseProjector>& out) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, FeasibleSet::WholeSpaceNode>) {
          // no constraint
        } else if constexpr (std::is_same_v<T, FeasibleSet::BoxNode>) {
          out.push_back([node](const Vec& x) { return project_box(node, x); });
        } else if constexpr (std::is_same_v<T, FeasibleSet::BallNode>) {
          out.push_back([node](const Vec& x) { return project_ball(node, x); });
        } else if constexpr (std::is_same_v<T, FeasibleSet::PolyhedronNode>) {
          for (const auto& h : node.faces)
            out.push_back([h](const Vec& x) { return h.project(x); });
        } else {
          for (const auto& m : node.members) flatten_atoms(m, out);
        }
      },
      set.node());
}

Vec dykstra_over_atoms(std::vector<detail::DenseProjector> atoms, const Vec& x,
                       double tol, int max_cycles) {
  auto res = detail::dykstra(x, atoms, tol, max_cycles);
  if (!res.converged) {
    std::ostringstream os;
    os << "dykstra_project: no convergence after " << res.cycles
       << " cycles (cycle displacement " << res.displacement
       << "); the intersection may be empty";
    throw ProjectionError(
        os.str(),
        std::vector<double>(res.point.data(), res.point.data() + res.point.size()),
        res.displacement);
  }
  return res.point;
}

}  // namespace

Vec project_set(const FeasibleSet& set, const Vec& x, double tol, int max_cycles) {
  if (x.size() != set.dim())
    throw std::invalid_argument("project_set: dimension mismatch");
  return std::visit(
      [&](const auto& node) -> Vec {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, FeasibleSet::WholeSpaceNode>) {
          return x;
        } else if constexpr (std::is_same_v<T, FeasibleSet::BoxNode>) {
          return project_box(node, x);
        } else if constexpr (std::is_same_v<T, FeasibleSet::BallNode>) {
          return project_ball(node, x);
        } else if constexpr (std::is_same_v<T, FeasibleSet::PolyhedronNode>) {
          if (node.faces.size() == 1) return node.faces.front().project(x);
          std::vector<detail::DenseProjector> atoms;
          flatten_atoms(set, atoms);
          return dykstra_over_atoms(std::move(atoms), x, tol, max_cycles);
        } else {
          std::vector<detail::DenseProjector> atoms;
          flatten_atoms(set, atoms);
          return dykstra_over_atoms(std::move(atoms), x, tol, max_cycles);
        }
      },
      set.node());
}

Vec dykstra_project(std::span<const FeasibleSet> members, const Vec& x,
                    double tol, int max_cycles) {
  for (const auto& m : members)
    if (m.dim() != x.size())
      throw std::invalid_argument("dykstra_project: dimension mismatch");
  std::vector<detail::DenseProjector> atoms;
  for (const auto& m : members) flatten_atoms(m, atoms);
  return dykstra_over_atoms(std::move(atoms), x, tol, max_cycles);
}

Vec project_qp_oracle(std::span<const Halfspace> halfspaces, const Vec& x) {
  const int r = static_cast<int>(halfspaces.size());
  if (r == 0) return x;
  if (r > set_limits::kQpOracleMaxHalfspaces)
    throw std::invalid_argument("project_qp_oracle: too many halfspaces for subset enumeration");
  for (const auto& h : halfspaces)
    if (h.a.size() != x.size())
      throw std::invalid_argument("project_qp_oracle: dimension mismatch");

  const double scale = std::max(1.0, x.norm());
  const double feas_tol = 1e-9 * scale;
  const double consistency_tol = 1e-10 * scale;

  const auto feasible = [&](const Vec& z) {
    return std::all_of(halfspaces.begin(), halfspaces.end(), [&](const Halfspace& h) {
      return h.signed_violation(z) <= feas_tol;
    });
  };

  std::optional<Vec> best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    Vec z;
    if (mask == 0) {
      z = x;
    } else {
      const int k = std::popcount(mask);
      Mat A(k, x.size());
      Vec rhs(k);
      int row = 0;
      for (int i = 0; i < r; ++i) {
        if (mask & (1u << i)) {
          A.row(row) = halfspaces[static_cast<size_t>(i)].a.transpose();
          rhs(row) = halfspaces[static_cast<size_t>(i)].b;
          ++row;
        }
      }
      // Least-norm correction onto the affine set A z = rhs; rank-deficient
      // subsets get minimal-norm multipliers through the complete orthogonal
      // decomposition. Inconsistent subsets describe an empty affine set.
      const Mat gram = A * A.transpose();
      const Vec lambda =
          gram.completeOrthogonalDecomposition().solve(A * x - rhs);
      z = x - A.transpose() * lambda;
      if ((A * z - rhs).lpNorm<Eigen::Infinity>() > consistency_tol) continue;
    }
    if (!feasible(z)) continue;
    const double dist = (z - x).norm();
    if (dist < best_dist) {
      best_dist = dist;
      best = std::move(z);
    }
  }
  if (!best)
    throw InfeasibleError("project_qp_oracle: no feasible candidate; the polyhedron is empty");
  // Any feasible point is at least as far from x as the projection, and the
  // true active set always appears among the subsets, so the minimum is the
  // exact projection.
  return *best;
}

std::vector<Halfspace> box_halfspaces(const Vec& lo, const Vec& hi) {
  if (lo.size() != hi.size())
    throw std::invalid_argument("box_halfspaces: bound dimensions disagree");
  std::vector<Halfspace> out;
  out.reserve(static_cast<size_t>(2 * lo.size()));
  for (Eigen::Index i = 0; i < lo.size(); ++i) {
    out.emplace_back(-Vec::Unit(lo.size(), i), -lo(i));
    out.emplace_back(Vec::Unit(lo.size(), i), hi(i));
  }
  return out;
}

}  // namespace varineq

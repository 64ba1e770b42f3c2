// varineq - solver library for variable inequalities
// Licensed under Apache 2.0

#pragma once

#include <Eigen/Dense>
#include <span>
#include <variant>
#include <vector>

#include "varineq/errors.hpp"

namespace varineq {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Halfspace { z : <a, z> <= b } with ||a|| = 1 (b rescaled on construction).
struct Halfspace {
  Vec a;
  double b = 0.0;

  Halfspace() = default;
  Halfspace(Vec normal, double offset);

  // <a, x> - b; nonpositive inside.
  double signed_violation(const Vec& x) const { return a.dot(x) - b; }
  bool contains(const Vec& x, double tol) const;
  Vec project(const Vec& x) const;
};

// Closed convex feasible set, one of: whole space, box, ball, polyhedron
// (intersection of halfspaces), or intersection of other feasible sets.
// Values are immutable; projections are pure and reentrant.
class FeasibleSet {
 public:
  struct WholeSpaceNode {
    int n;
  };
  struct BoxNode {
    Vec lo, hi;
  };
  struct BallNode {
    Vec center;
    double radius;
  };
  struct PolyhedronNode {
    std::vector<Halfspace> faces;
  };
  struct IntersectionNode {
    std::vector<FeasibleSet> members;
  };
  using Node = std::variant<WholeSpaceNode, BoxNode, BallNode, PolyhedronNode,
                            IntersectionNode>;

  static FeasibleSet whole_space(int n);
  static FeasibleSet box(Vec lo, Vec hi);
  static FeasibleSet ball(Vec center, double radius);
  static FeasibleSet polyhedron(std::vector<Halfspace> faces);
  static FeasibleSet halfspace(Halfspace h);
  static FeasibleSet intersection(std::vector<FeasibleSet> members);

  int dim() const;
  const Node& node() const { return node_; }
  bool contains(const Vec& x, double tol) const;

 private:
  explicit FeasibleSet(Node node) : node_(std::move(node)) {}
  Node node_;
};

namespace set_limits {
inline constexpr int kDykstraMaxCycles = 10000;
inline constexpr double kDefaultProjectionTol = 1e-10;
inline constexpr int kQpOracleMaxHalfspaces = 16;
}  // namespace set_limits

// Orthogonal projection of x onto the set. Closed form for whole space, box,
// ball and a single halfspace; Dykstra cycles otherwise. Throws
// ProjectionError when the cycles stall past the cap (the practical signal
// for an empty intersection, which Dykstra cannot certify).
Vec project_set(const FeasibleSet& set, const Vec& x,
                double tol = set_limits::kDefaultProjectionTol,
                int max_cycles = set_limits::kDykstraMaxCycles);

// Nearest point of the intersection of the members to x, by Dykstra cycles
// with per-set correction terms. Members are flattened to closed-form
// projectable pieces first, which preserves the intersection.
Vec dykstra_project(std::span<const FeasibleSet> members, const Vec& x,
                    double tol = set_limits::kDefaultProjectionTol,
                    int max_cycles = set_limits::kDykstraMaxCycles);

// Exact reference projection onto an intersection of halfspaces, by
// enumerating active subsets and solving the equality-constrained least-norm
// system of each. Desk scale only (at most kQpOracleMaxHalfspaces rows).
// Throws InfeasibleError when no candidate is feasible.
Vec project_qp_oracle(std::span<const Halfspace> halfspaces, const Vec& x);

// The 2n facets of a box, for feeding box-constrained instances to the
// QP oracle.
std::vector<Halfspace> box_halfspaces(const Vec& lo, const Vec& hi);

}  // namespace varineq

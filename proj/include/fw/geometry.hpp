#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fw/vec.hpp"

namespace fw {

enum class SetKind { Simplex, Box, L1Ball, L2Ball, Interval };

/// Compact convex feasible set with closed-form linear minimization and
/// Euclidean projection. Immutable after construction; all operations are
/// pure, so instances can be shared across concurrent runs.
class FeasibleSet {
 public:
  static FeasibleSet simplex(int dim);
  static FeasibleSet box(int dim, double lo, double hi);
  static FeasibleSet l1_ball(int dim, double radius);
  static FeasibleSet l2_ball(int dim, double radius);
  static FeasibleSet interval(double lo, double hi);

  SetKind kind() const { return kind_; }
  int dim() const { return dim_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double ball_radius() const { return r_; }

  /// sup of ||c1 - c2|| over the set (l2).
  double diameter() const;
  /// sup of ||c|| over the set (l2).
  double radius() const;

  /// argmin over the set of <g, v>. Vertices for polytopes; ties go to the
  /// lowest coordinate index, and g = 0 on a ball returns the center.
  Vec lmo(const Vec& g) const;

  /// argmin over the set of 1/2 ||c - x||^2 (unique).
  Vec project(const Vec& x) const;

  /// Feasible point p' with 1/2||p'-x||^2 within slack K of the projection
  /// value. For K > 0 a seeded random perturbation deliberately consumes
  /// budget so callers see genuinely inexact projections.
  Vec approx_project(const Vec& x, double K, std::uint64_t seed) const;

  bool contains(const Vec& x, double tol = 1e-9) const;

  /// Distance from a feasible x to the boundary (for the simplex: relative
  /// to its affine hull, which is where iterates live).
  double distance_to_boundary(const Vec& x) const;

  bool is_polytope() const { return kind_ != SetKind::L2Ball; }
  std::vector<Vec> vertices() const;

  Vec center() const;
  Vec random_point(Rng& rng) const;

  std::string describe() const;

 private:
  FeasibleSet(SetKind kind, int dim, double lo, double hi, double r);

  SetKind kind_;
  int dim_;
  double lo_ = 0.0, hi_ = 0.0;  // Box / Interval bounds
  double r_ = 0.0;              // ball radius
};

/// (diameter, radius) pair.
std::pair<double, double> set_constants(const FeasibleSet& set);

/// Sort-based projection onto {w >= 0, sum w = radius}, O(d log d).
Vec project_onto_simplex(const Vec& x, double radius);

}  // namespace fw

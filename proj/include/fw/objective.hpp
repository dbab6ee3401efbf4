#pragma once

#include <optional>
#include <utility>

#include "fw/geometry.hpp"
#include "fw/vec.hpp"

namespace fw {

enum class ObjectiveKind { Quadratic, ScalarSquare, ShiftedQuadratic };

/// Quadratic-family objective f(x) = 1/2 x'Ax + b'x + c0 with exact gradient
/// and a gradient-Lipschitz constant certified at construction (L is never
/// below the spectral radius of A).
class Objective {
 public:
  static Objective quadratic(Mat A, Vec b, std::optional<double> lipschitz_override = {});
  /// f(x) = 1/2 x^2 in one dimension.
  static Objective scalar_square();
  /// f(x) = 1/2 ||x - target||^2.
  static Objective shifted_quadratic(Vec target);

  /// Same objective with an externally supplied optimal value over the set.
  Objective with_fstar(double f_star) const;

  ObjectiveKind kind() const { return kind_; }
  int dim() const { return int(b_.size()); }
  double value(const Vec& x) const;
  Vec gradient(const Vec& x) const;
  double lipschitz() const { return lipschitz_; }
  double spectral_radius() const { return spectral_radius_; }
  bool is_convex() const { return eig_min_ >= -1e-12; }
  const Mat& matrix() const { return A_; }
  const Vec& linear() const { return b_; }
  std::optional<double> fstar_override() const { return fstar_override_; }

  /// Certified sup of ||grad f|| over the set: exact vertex maximum on
  /// polytopes (the norm of an affine map is convex), operator-norm bound
  /// on the l2 ball.
  double grad_bound(const FeasibleSet& set) const;

  /// Exact minimum over the set where a closed form exists: an explicit
  /// override, c*I quadratics (projection), or diagonal quadratics over
  /// boxes (separable, including indefinite ones). nullopt otherwise.
  std::optional<double> known_fstar(const FeasibleSet& set) const;

  /// Certified {lower, upper} bounds on the minimum over the set. Falls back
  /// to a projected-lattice search: upper = best sample, lower = upper minus
  /// the gradient bound times the covering radius of the lattice.
  std::pair<double, double> fstar_bounds(const FeasibleSet& set, double resolution = 1e-3) const;

 private:
  Objective(ObjectiveKind kind, Mat A, Vec b, double c0);

  ObjectiveKind kind_;
  Mat A_;
  Vec b_;
  double c0_ = 0.0;
  double lipschitz_ = 0.0;
  double spectral_radius_ = 0.0;
  double eig_min_ = 0.0;
  std::optional<double> fstar_override_;
};

}  // namespace fw

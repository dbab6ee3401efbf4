#include "fw/objective.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace fw {

Objective::Objective(ObjectiveKind kind, Mat A, Vec b, double c0)
    : kind_(kind), A_(std::move(A)), b_(std::move(b)), c0_(c0) {
  if (b_.size() < 1) throw std::invalid_argument("objective: dimension must be >= 1");
  Eigen::SelfAdjointEigenSolver<Mat> eig(A_);
  const Vec& ev = eig.eigenvalues();
  spectral_radius_ = std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff()));
  eig_min_ = ev.minCoeff();
  lipschitz_ = spectral_radius_;
}

Objective Objective::quadratic(Mat A, Vec b, std::optional<double> lipschitz_override) {
  if (A.rows() != A.cols()) throw std::invalid_argument("quadratic: A must be square");
  if (A.rows() != b.size()) throw std::invalid_argument("quadratic: A/b dimension mismatch");
  double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("quadratic: A must be symmetric");
  }
  Mat sym = 0.5 * (A + A.transpose());
  Objective obj(ObjectiveKind::Quadratic, std::move(sym), std::move(b), 0.0);
  if (lipschitz_override) {
    if (*lipschitz_override < obj.spectral_radius_ - 1e-12) {
      throw std::invalid_argument("quadratic: L override below the spectral radius of A");
    }
    obj.lipschitz_ = std::max(*lipschitz_override, obj.spectral_radius_);
  }
  return obj;
}

Objective Objective::scalar_square() {
  Mat A(1, 1);
  A(0, 0) = 1.0;
  return Objective(ObjectiveKind::ScalarSquare, A, Vec::Zero(1), 0.0);
}

Objective Objective::shifted_quadratic(Vec target) {
  require_finite(target, "shifted_quadratic");
  const Eigen::Index d = target.size();
  double c0 = 0.5 * target.squaredNorm();
  return Objective(ObjectiveKind::ShiftedQuadratic, Mat::Identity(d, d), -target, c0);
}

Objective Objective::with_fstar(double f_star) const {
  Objective copy = *this;
  copy.fstar_override_ = f_star;
  return copy;
}

double Objective::value(const Vec& x) const {
  require_dim(x, b_.size(), "objective value");
  return 0.5 * x.dot(A_ * x) + b_.dot(x) + c0_;
}

Vec Objective::gradient(const Vec& x) const {
  require_dim(x, b_.size(), "objective gradient");
  return A_ * x + b_;
}

double Objective::grad_bound(const FeasibleSet& set) const {
  if (set.dim() != dim()) throw std::invalid_argument("grad_bound: dimension mismatch");
  if (set.is_polytope()) {
    double best = 0.0;
    for (const Vec& v : set.vertices()) best = std::max(best, gradient(v).norm());
    return best;
  }
  // l2 ball centered at the origin: ||Ax + b|| <= ||A|| r + ||b||.
  return spectral_radius_ * set.ball_radius() + b_.norm();
}

namespace {

double separable_min(double a, double b, double lo, double hi) {
  double best = std::min(0.5 * a * lo * lo + b * lo, 0.5 * a * hi * hi + b * hi);
  if (a > 0.0) {
    double t = std::clamp(-b / a, lo, hi);
    best = std::min(best, 0.5 * a * t * t + b * t);
  }
  return best;
}

bool is_scaled_identity(const Mat& A, double& c) {
  c = A(0, 0);
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (i == j ? A(i, j) != c : A(i, j) != 0.0) return false;
    }
  }
  return true;
}

bool is_diagonal(const Mat& A) {
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (i != j && A(i, j) != 0.0) return false;
    }
  }
  return true;
}

}  // namespace

std::optional<double> Objective::known_fstar(const FeasibleSet& set) const {
  if (fstar_override_) return fstar_override_;
  double c = 0.0;
  if (is_scaled_identity(A_, c) && c > 0.0) {
    // f = c/2 ||x + b/c||^2 + const: minimized at the projection of -b/c.
    Vec p = set.project(-b_ / c);
    return value(p);
  }
  if (is_diagonal(A_) &&
      (set.kind() == SetKind::Box || set.kind() == SetKind::Interval)) {
    double total = c0_;
    for (int i = 0; i < dim(); ++i) {
      total += separable_min(A_(i, i), b_[i], set.lo(), set.hi());
    }
    return total;
  }
  return std::nullopt;
}

std::pair<double, double> Objective::fstar_bounds(const FeasibleSet& set, double resolution) const {
  if (auto exact = known_fstar(set)) return {*exact, *exact};

  // Lattice over the bounding box, each node projected back onto the set.
  // Projection is nonexpansive, so the projected lattice still covers the
  // set with radius h*sqrt(d)/2.
  const int d = set.dim();
  double blo, bhi;
  switch (set.kind()) {
    case SetKind::Box:
    case SetKind::Interval: blo = set.lo(); bhi = set.hi(); break;
    case SetKind::Simplex:  blo = 0.0; bhi = 1.0; break;
    default:                blo = -set.ball_radius(); bhi = set.ball_radius(); break;
  }
  const double h = resolution * (bhi - blo);
  const long per_axis = std::lround((bhi - blo) / h) + 1;
  double count = std::pow(double(per_axis), d);
  if (count > 2e7) {
    throw std::invalid_argument(
        "fstar_bounds: lattice too large at this resolution; supply f_star explicitly");
  }

  std::vector<long> idx(d, 0);
  Vec pt(d);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    for (int i = 0; i < d; ++i) pt[i] = blo + h * double(idx[i]);
    best = std::min(best, value(set.project(pt)));
    int axis = 0;
    while (axis < d && ++idx[axis] == per_axis) idx[axis++] = 0;
    if (axis == d) break;
  }
  const double cover = 0.5 * h * std::sqrt(double(d));
  return {best - grad_bound(set) * cover, best};
}

}  // namespace fw

#include "fw/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace fw {

FeasibleSet::FeasibleSet(SetKind kind, int dim, double lo, double hi, double r)
    : kind_(kind), dim_(dim), lo_(lo), hi_(hi), r_(r) {}

FeasibleSet FeasibleSet::simplex(int dim) {
  if (dim < 2) throw std::invalid_argument("simplex: dim must be >= 2");
  return FeasibleSet(SetKind::Simplex, dim, 0.0, 1.0, 0.0);
}

FeasibleSet FeasibleSet::box(int dim, double lo, double hi) {
  if (dim < 1) throw std::invalid_argument("box: dim must be >= 1");
  if (!(lo < hi)) throw std::invalid_argument("box: need lo < hi");
  return FeasibleSet(SetKind::Box, dim, lo, hi, 0.0);
}

FeasibleSet FeasibleSet::l1_ball(int dim, double radius) {
  if (dim < 1) throw std::invalid_argument("l1_ball: dim must be >= 1");
  if (!(radius > 0)) throw std::invalid_argument("l1_ball: radius must be > 0");
  return FeasibleSet(SetKind::L1Ball, dim, 0.0, 0.0, radius);
}

FeasibleSet FeasibleSet::l2_ball(int dim, double radius) {
  if (dim < 1) throw std::invalid_argument("l2_ball: dim must be >= 1");
  if (!(radius > 0)) throw std::invalid_argument("l2_ball: radius must be > 0");
  return FeasibleSet(SetKind::L2Ball, dim, 0.0, 0.0, radius);
}

FeasibleSet FeasibleSet::interval(double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("interval: need lo < hi");
  return FeasibleSet(SetKind::Interval, 1, lo, hi, 0.0);
}

double FeasibleSet::diameter() const {
  switch (kind_) {
    case SetKind::Simplex:  return std::sqrt(2.0);
    case SetKind::Box:      return (hi_ - lo_) * std::sqrt(double(dim_));
    case SetKind::L1Ball:   return 2.0 * r_;
    case SetKind::L2Ball:   return 2.0 * r_;
    case SetKind::Interval: return hi_ - lo_;
  }
  return 0.0;
}

double FeasibleSet::radius() const {
  switch (kind_) {
    case SetKind::Simplex:  return 1.0;
    case SetKind::Box:      return std::max(std::abs(lo_), std::abs(hi_)) * std::sqrt(double(dim_));
    case SetKind::L1Ball:   return r_;
    case SetKind::L2Ball:   return r_;
    case SetKind::Interval: return std::max(std::abs(lo_), std::abs(hi_));
  }
  return 0.0;
}

Vec FeasibleSet::lmo(const Vec& g) const {
  require_dim(g, dim_, "lmo");
  require_finite(g, "lmo");
  Vec v = Vec::Zero(dim_);
  switch (kind_) {
    case SetKind::Simplex: {
      Eigen::Index j = 0;
      for (Eigen::Index i = 1; i < dim_; ++i) {
        if (g[i] < g[j]) j = i;  // strict: ties keep the lowest index
      }
      v[j] = 1.0;
      return v;
    }
    case SetKind::Box:
    case SetKind::Interval: {
      // zero components are ties; take the lower bound deterministically
      for (Eigen::Index i = 0; i < dim_; ++i) v[i] = (g[i] < 0.0) ? hi_ : lo_;
      return v;
    }
    case SetKind::L1Ball: {
      Eigen::Index j = 0;
      double best = std::abs(g[0]);
      for (Eigen::Index i = 1; i < dim_; ++i) {
        if (std::abs(g[i]) > best) { best = std::abs(g[i]); j = i; }
      }
      if (best == 0.0) return v;  // g = 0: center
      v[j] = (g[j] > 0.0) ? -r_ : r_;
      return v;
    }
    case SetKind::L2Ball: {
      double n = g.norm();
      if (n == 0.0) return v;  // center
      return (-r_ / n) * g;
    }
  }
  return v;
}

Vec project_onto_simplex(const Vec& x, double radius) {
  const Eigen::Index d = x.size();
  std::vector<double> u(x.data(), x.data() + d);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0.0, tau = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    cum += u[j];
    double t = (cum - radius) / double(j + 1);
    if (u[j] - t > 0.0) tau = t;
  }
  return (x.array() - tau).cwiseMax(0.0);
}

Vec FeasibleSet::project(const Vec& x) const {
  require_dim(x, dim_, "project");
  require_finite(x, "project");
  switch (kind_) {
    case SetKind::Simplex:
      return project_onto_simplex(x, 1.0);
    case SetKind::Box:
    case SetKind::Interval:
      return x.array().cwiseMax(lo_).cwiseMin(hi_);
    case SetKind::L2Ball: {
      double n = x.norm();
      return (n <= r_) ? x : Vec((r_ / n) * x);
    }
    case SetKind::L1Ball: {
      if (x.lpNorm<1>() <= r_) return x;
      Vec w = project_onto_simplex(x.cwiseAbs(), r_);
      Vec out(dim_);
      for (Eigen::Index i = 0; i < dim_; ++i) out[i] = (x[i] < 0.0) ? -w[i] : w[i];
      return out;
    }
  }
  return x;
}

Vec FeasibleSet::approx_project(const Vec& x, double K, std::uint64_t seed) const {
  require_dim(x, dim_, "approx_project");
  require_finite(x, "approx_project");
  if (K < 0.0) throw std::invalid_argument("approx_project: K must be >= 0");
  Vec p = project(x);
  if (K == 0.0) return p;

  const double budget = 0.5 * (p - x).squaredNorm() + K;
  Rng rng(mix_seed(seed, hash_bits(x, 0x4B50524F4AULL)));
  Vec best = p;
  double best_val = 0.5 * (p - x).squaredNorm();

  // Walk away from the exact projection while the slack budget holds; keep
  // the feasible candidate that consumes the most budget.
  const double reach = std::min(diameter(), std::sqrt(2.0 * K)) + 1e-12;
  for (int trial = 0; trial < 24; ++trial) {
    Vec dir = rng.unit_vector(dim_);
    double scale = reach * rng.uniform(0.5, 1.0);
    for (int shrink = 0; shrink < 14; ++shrink) {
      Vec cand = project(p + scale * dir);
      double val = 0.5 * (cand - x).squaredNorm();
      if (val <= budget) {
        if (val > best_val) { best = cand; best_val = val; }
        break;
      }
      scale *= 0.5;
    }
  }
  return best;
}

bool FeasibleSet::contains(const Vec& x, double tol) const {
  if (x.size() != dim_ || !all_finite(x)) return false;
  return (x - project(x)).norm() <= tol;
}

double FeasibleSet::distance_to_boundary(const Vec& x) const {
  require_dim(x, dim_, "distance_to_boundary");
  switch (kind_) {
    case SetKind::Box:
    case SetKind::Interval: {
      double d = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < dim_; ++i) {
        d = std::min(d, std::min(x[i] - lo_, hi_ - x[i]));
      }
      return d;
    }
    case SetKind::L2Ball:
      return r_ - x.norm();
    case SetKind::L1Ball:
      return (r_ - x.lpNorm<1>()) / std::sqrt(double(dim_));
    case SetKind::Simplex: {
      // Facet x_i = 0 cut with the affine hull {sum = 1}; the inward normal
      // there has norm sqrt((d-1)/d), hence the scaling below.
      double m = x.minCoeff();
      return m * std::sqrt(double(dim_) / double(dim_ - 1));
    }
  }
  return 0.0;
}

std::vector<Vec> FeasibleSet::vertices() const {
  std::vector<Vec> vs;
  switch (kind_) {
    case SetKind::Simplex:
      for (int i = 0; i < dim_; ++i) {
        Vec v = Vec::Zero(dim_);
        v[i] = 1.0;
        vs.push_back(v);
      }
      return vs;
    case SetKind::L1Ball:
      for (int i = 0; i < dim_; ++i) {
        Vec v = Vec::Zero(dim_);
        v[i] = r_;
        vs.push_back(v);
        v[i] = -r_;
        vs.push_back(v);
      }
      return vs;
    case SetKind::Box:
    case SetKind::Interval: {
      if (dim_ > 20) throw std::invalid_argument("vertices: box dimension too large to enumerate");
      const std::uint64_t n = 1ULL << dim_;
      for (std::uint64_t mask = 0; mask < n; ++mask) {
        Vec v(dim_);
        for (int i = 0; i < dim_; ++i) v[i] = (mask >> i) & 1 ? hi_ : lo_;
        vs.push_back(v);
      }
      return vs;
    }
    case SetKind::L2Ball:
      throw std::invalid_argument("vertices: l2 ball is not a polytope");
  }
  return vs;
}

Vec FeasibleSet::center() const {
  switch (kind_) {
    case SetKind::Simplex:
      return Vec::Constant(dim_, 1.0 / double(dim_));
    case SetKind::Box:
    case SetKind::Interval:
      return Vec::Constant(dim_, 0.5 * (lo_ + hi_));
    case SetKind::L1Ball:
    case SetKind::L2Ball:
      return Vec::Zero(dim_);
  }
  return Vec::Zero(dim_);
}

Vec FeasibleSet::random_point(Rng& rng) const {
  switch (kind_) {
    case SetKind::Simplex: {
      // Normalized exponentials: uniform on the simplex.
      Vec w(dim_);
      for (int i = 0; i < dim_; ++i) w[i] = -std::log(1.0 - rng.uniform());
      return w / w.sum();
    }
    case SetKind::Box:
    case SetKind::Interval: {
      Vec v(dim_);
      for (int i = 0; i < dim_; ++i) v[i] = rng.uniform(lo_, hi_);
      return v;
    }
    case SetKind::L2Ball: {
      Vec u = rng.unit_vector(dim_);
      double rad = r_ * std::pow(rng.uniform(), 1.0 / double(dim_));
      return rad * u;
    }
    case SetKind::L1Ball: {
      Vec w(dim_);
      for (int i = 0; i < dim_; ++i) w[i] = -std::log(1.0 - rng.uniform());
      w /= w.sum();
      double rad = r_ * std::pow(rng.uniform(), 1.0 / double(dim_));
      Vec v(dim_);
      for (int i = 0; i < dim_; ++i) v[i] = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rad * w[i];
      return v;
    }
  }
  return center();
}

std::string FeasibleSet::describe() const {
  switch (kind_) {
    case SetKind::Simplex:  return "simplex(d=" + std::to_string(dim_) + ")";
    case SetKind::Box:
      return "box(d=" + std::to_string(dim_) + ", [" + std::to_string(lo_) + ", " +
             std::to_string(hi_) + "])";
    case SetKind::L1Ball:   return "l1_ball(d=" + std::to_string(dim_) + ", r=" + std::to_string(r_) + ")";
    case SetKind::L2Ball:   return "l2_ball(d=" + std::to_string(dim_) + ", r=" + std::to_string(r_) + ")";
    case SetKind::Interval:
      return "interval([" + std::to_string(lo_) + ", " + std::to_string(hi_) + "])";
  }
  return "?";
}

std::pair<double, double> set_constants(const FeasibleSet& set) {
  return {set.diameter(), set.radius()};
}

}  // namespace fw

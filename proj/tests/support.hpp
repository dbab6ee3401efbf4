#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "fw/geometry.hpp"
#include "fw/objective.hpp"

// Test-only reference oracles, kept independent of the library's own
// computation paths so they can arbitrate.

namespace fwtest {

// Dense search over the 3-simplex lattice {(i, j, n-i-j)/n}.
inline fw::Vec grid_simplex3_projection(const fw::Vec& x, int n) {
  fw::Vec best(3);
  double best_val = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n - i; ++j) {
      fw::Vec p(3);
      p << double(i) / n, double(j) / n, double(n - i - j) / n;
      double val = 0.5 * (p - x).squaredNorm();
      if (val < best_val) {
        best_val = val;
        best = p;
      }
    }
  }
  return best;
}

// Linear minimum over an explicit vertex list.
inline double vertex_min(const std::vector<fw::Vec>& vertices, const fw::Vec& g) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& v : vertices) m = std::min(m, g.dot(v));
  return m;
}

// Central finite difference of the objective.
inline fw::Vec fd_gradient(const fw::Objective& obj, const fw::Vec& x, double h = 1e-6) {
  fw::Vec g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    fw::Vec lo = x, hi = x;
    lo[i] -= h;
    hi[i] += h;
    g[i] = (obj.value(hi) - obj.value(lo)) / (2.0 * h);
  }
  return g;
}

}  // namespace fwtest

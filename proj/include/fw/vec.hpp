#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fw {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

bool all_finite(const Vec& v);
void require_finite(const Vec& v, const char* what);
void require_dim(const Vec& v, Eigen::Index dim, const char* what);

/// Deterministic generator (splitmix64 core). Unlike the std distributions,
/// every draw is reproducible bit-for-bit across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  double uniform();                     // [0, 1)
  double uniform(double a, double b);   // [a, b)
  double normal();
  Vec gaussian(Eigen::Index d);
  Vec unit_vector(Eigen::Index d);

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Derives an independent stream from a base seed, for per-call determinism.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Stable 64-bit fingerprint of a vector's bit pattern (stream derivation).
std::uint64_t hash_bits(const Vec& v, std::uint64_t salt);

}  // namespace fw

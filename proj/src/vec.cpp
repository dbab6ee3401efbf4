#include "fw/vec.hpp"

#include <cmath>
#include <cstring>

namespace fw {

bool all_finite(const Vec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) return false;
  }
  return true;
}

void require_finite(const Vec& v, const char* what) {
  if (!all_finite(v)) {
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
  }
}

void require_dim(const Vec& v, Eigen::Index dim, const char* what) {
  if (v.size() != dim) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (got " +
                                std::to_string(v.size()) + ", expected " +
                                std::to_string(dim) + ")");
  }
}

namespace {
inline std::uint64_t splitmix(std::uint64_t& s) {
  s += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace

std::uint64_t Rng::next_u64() { return splitmix(state_); }

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller; u1 kept strictly positive so the log is finite.
  double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  double u2 = uniform();
  double mag = std::sqrt(-2.0 * std::log(u1));
  double ang = 2.0 * M_PI * u2;
  spare_ = mag * std::sin(ang);
  have_spare_ = true;
  return mag * std::cos(ang);
}

Vec Rng::gaussian(Eigen::Index d) {
  Vec v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = normal();
  return v;
}

Vec Rng::unit_vector(Eigen::Index d) {
  while (true) {
    Vec v = gaussian(d);
    double n = v.norm();
    if (n > 1e-12) return v / n;
  }
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed ^ (stream * 0x9E3779B97F4A7C15ULL + 0x2545F4914F6CDD1DULL);
  return splitmix(s);
}

std::uint64_t hash_bits(const Vec& v, std::uint64_t salt) {
  // FNV-1a over the raw doubles.
  std::uint64_t h = 0xCBF29CE484222325ULL ^ salt;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    std::uint64_t bits;
    std::memcpy(&bits, &v[i], sizeof(bits));
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xFFULL;
      h *= 0x100000001B3ULL;
    }
  }
  return h;
}

}  // namespace fw

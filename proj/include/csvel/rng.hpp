#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace csvel::rng {

// Randomness is pinned to the mt19937_64 output sequence plus hand-rolled
// distributions, so equal seeds give bit-identical results on every
// platform (std:: distributions are implementation-defined).

using Engine = std::mt19937_64;

/// Unbiased integer in [0, n) via rejection sampling.
inline std::uint64_t uniform_index(Engine& eng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v = eng();
  while (v >= limit) v = eng();
  return v % n;
}

/// Uniform double in [0, 1) with 53-bit resolution.
inline double uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Standard normal deviates, Box-Muller with a cached spare.
class GaussianGen {
 public:
  explicit GaussianGen(std::uint64_t seed) : eng_(seed) {}

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform01(eng_);
    while (u1 <= 0.0) u1 = uniform01(eng_);
    const double u2 = uniform01(eng_);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  Engine eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// k distinct indices drawn from [0, n), returned sorted.
/// Partial Fisher-Yates over an explicit index array.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k,
                                                    std::uint64_t seed);

}  // namespace csvel::rng

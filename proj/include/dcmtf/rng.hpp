#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace dcmtf {

// Seeded RNG with hand-rolled distributions. std::mt19937_64 output is
// fully specified by the standard; the std:: distributions are not, so we
// sample uniforms and normals ourselves to keep results stable across
// toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n), unbiased (rejection sampling).
  std::uint64_t uniform_int(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % n;
  }

  // Standard normal via Box-Muller (the sine twin is discarded).
  double normal() {
    double u1;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

  // Deterministic stream derivation: hashes (seed, a, b, c) so independent
  // consumers (per edge, per epoch, per restart) never share a stream.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t a,
                              std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t x = seed;
    for (std::uint64_t v : {a, b, c}) {
      x += 0x9e3779b97f4a7c15ULL + v;
      x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
      x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
      x = x ^ (x >> 31);
    }
    return x;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace dcmtf

#pragma once

#include <complex>
#include <cstdint>
#include <cmath>
#include <numbers>

namespace qheis {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Global phase convention: e(t) = exp(2*pi*i*t).
inline cplx e2pi(double t) { return std::polar(1.0, kTwoPi * t); }

/// Conjugate phase: ebar(t) = exp(-2*pi*i*t).
inline cplx ebar(double t) { return std::polar(1.0, -kTwoPi * t); }

/**
 * SplitMix64: a tiny deterministic pseudo-random generator.
 *
 * Used everywhere randomness is needed so that results are reproducible
 * bit-for-bit across platforms and thread counts (the standard library
 * distributions do not guarantee portable streams).
 */
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0,1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo,hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }
};

}  // namespace qheis

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qheis/common.hpp"
#include "qheis/grid.hpp"

namespace qheis {

/// In-place radix-2 FFT: a[m] <- sum_j e^{sign * 2 pi i * m j / N} a[j].
/// Hand-rolled (~30 lines) so results are bit-for-bit reproducible and free
/// of external planning state; N is a power of two.
inline void fft_pow2(std::vector<cplx>& a, int sign) {
  const std::size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("fft_pow2: size must be a power of two");
  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = static_cast<double>(sign) * kTwoPi / static_cast<double>(len);
    const cplx wlen = std::polar(1.0, ang);
    for (std::size_t i = 0; i < n; i += len) {
      cplx w(1.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const cplx u = a[i + j];
        const cplx t = a[i + j + len / 2] * w;
        a[i + j] = u + t;
        a[i + j + len / 2] = u - t;
        w *= wlen;
      }
    }
  }
}

/**
 * Centered continuum-normalized transform along one axis:
 *
 *   out[m] = spacing * sum_j exp(sign * 2 pi i * k_m * x_j) * f[..j..]
 *
 * with x_j the input axis points and k_m the centered dual points.  The
 * output grid carries the dual half-width on that axis.  Applying the
 * transform with sign -1 and then +1 (or vice versa) is the exact identity
 * because spacing * dual-spacing * N = 1.
 */
inline SampledFunction centered_dft_axis(const SampledFunction& f,
                                         std::size_t axis, int sign) {
  const std::size_t n = f.grid.N[axis];
  if (n % 4 != 0)
    throw std::invalid_argument("centered_dft_axis: N must be a multiple of 4");
  SampledFunction out = f;
  out.grid.L[axis] = f.grid.dual_half_width(axis);

  const double w = f.grid.spacing(axis);
  const auto& N = f.grid.N;
  std::vector<cplx> line(n);

  std::size_t outer0, outer1, stride;
  // Iterate over the two non-transformed axes.
  if (axis == 0) {
    outer0 = N[1]; outer1 = N[2]; stride = N[1] * N[2];
  } else if (axis == 1) {
    outer0 = N[0]; outer1 = N[2]; stride = N[2];
  } else {
    outer0 = N[0]; outer1 = N[1]; stride = 1;
  }
  for (std::size_t a = 0; a < outer0; ++a)
    for (std::size_t b = 0; b < outer1; ++b) {
      std::size_t base;
      if (axis == 0) base = a * N[2] + b;
      else if (axis == 1) base = (a * N[1]) * N[2] + b;
      else base = (a * N[1] + b) * N[2];
      for (std::size_t j = 0; j < n; ++j) {
        const cplx val = f.v[base + j * stride];
        line[j] = (j & 1) ? -val : val;
      }
      fft_pow2(line, sign);
      for (std::size_t m = 0; m < n; ++m) {
        const cplx val = w * line[m];
        out.v[base + m * stride] = (m & 1) ? -val : val;
      }
    }
  return out;
}

/// Full transform over all three axes with the ebar(<mu, x>) convention.
inline SampledFunction fourier(const SampledFunction& f) {
  auto g = centered_dft_axis(f, 0, -1);
  g = centered_dft_axis(g, 1, -1);
  return centered_dft_axis(g, 2, -1);
}

inline SampledFunction inverse_fourier(const SampledFunction& f) {
  auto g = centered_dft_axis(f, 0, +1);
  g = centered_dft_axis(g, 1, +1);
  return centered_dft_axis(g, 2, +1);
}

/// Fiberwise fast-axis transform (x,y,r) -> (p,q,r) with the ebar kernel.
inline SampledFunction partial_fourier_wedge(const SampledFunction& f) {
  if (f.picture != "xyr")
    throw std::invalid_argument("partial_fourier_wedge: expected xyr picture");
  auto g = centered_dft_axis(f, 0, -1);
  g = centered_dft_axis(g, 1, -1);
  g.picture = "pqr";
  return g;
}

/// Inverse fiberwise transform (p,q,r) -> (x,y,r) with the e(+) kernel.
inline SampledFunction partial_fourier_vee(const SampledFunction& f) {
  if (f.picture != "pqr")
    throw std::invalid_argument("partial_fourier_vee: expected pqr picture");
  auto g = centered_dft_axis(f, 0, +1);
  g = centered_dft_axis(g, 1, +1);
  g.picture = "xyr";
  return g;
}

/// Direct quadrature oracle for the fiberwise wedge transform at an
/// arbitrary dual point (p, q) and r-slice k.
inline cplx partial_wedge_quadrature(const SampledFunction& f, double p,
                                     double q, std::size_t k) {
  cplx s(0.0);
  for (std::size_t i = 0; i < f.grid.N[0]; ++i)
    for (std::size_t j = 0; j < f.grid.N[1]; ++j)
      s += ebar(p * f.grid.point(0, i) + q * f.grid.point(1, j)) * f.at(i, j, k);
  return s * f.grid.spacing(0) * f.grid.spacing(1);
}

}  // namespace qheis

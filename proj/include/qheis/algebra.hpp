#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qheis/closed_form.hpp"
#include "qheis/common.hpp"
#include "qheis/fourier.hpp"
#include "qheis/grid.hpp"
#include "qheis/params.hpp"

namespace qheis {

/// Cocycle value sigma^r((x,y),(x',y')) = ebar(hbar * eta_lambda(r) * beta(x,y')).
inline cplx sigma_cocycle(const std::vector<double>& x,
                          const std::vector<double>& yp, double r,
                          const ModelParams& params) {
  return ebar(params.hbar * eta(params.lambda, r) * beta(x, yp));
}

/**
 * Twisted convolution in the (x,y,r)-picture, fiberwise in r:
 *
 *   (f *_sigma g)(x,y,r) =
 *     int f(xt,yt,r) g(x-xt, y-yt, r) ebar[hbar eta(r) xt (y - yt)] dxt dyt
 *
 * Direct O(N^4) summation per r-slice (n = 1); slices where either factor
 * vanishes identically are skipped.
 */
inline SampledFunction twisted_conv_sigma(const SampledFunction& f,
                                          const SampledFunction& g,
                                          const ModelParams& params) {
  if (f.picture != "xyr" || g.picture != "xyr")
    throw std::invalid_argument("twisted_conv_sigma: expected xyr picture");
  if (!(f.grid == g.grid))
    throw std::invalid_argument("twisted_conv_sigma: grid mismatch");
  const std::size_t N0 = f.grid.N[0], N1 = f.grid.N[1], Nr = f.grid.N[2];
  const double du = f.grid.spacing(0), dv = f.grid.spacing(1);
  SampledFunction out(f.grid, "xyr");

  std::vector<cplx> phase(N0 * N1);
  std::vector<cplx> fs(N0 * N1), gs(N0 * N1);
  const std::ptrdiff_t h0 = static_cast<std::ptrdiff_t>(N0) / 2;
  const std::ptrdiff_t h1 = static_cast<std::ptrdiff_t>(N1) / 2;

  for (std::size_t k = 0; k < Nr; ++k) {
    bool f_zero = true, g_zero = true;
    for (std::size_t i = 0; i < N0 && (f_zero || g_zero); ++i)
      for (std::size_t j = 0; j < N1 && (f_zero || g_zero); ++j) {
        if (f.at(i, j, k) != cplx(0.0)) f_zero = false;
        if (g.at(i, j, k) != cplx(0.0)) g_zero = false;
      }
    if (f_zero || g_zero) continue;

    const double c = params.hbar * eta(params.lambda, f.grid.point(2, k));
    // phase[a * N1 + l] = ebar(c * x_a * (y-displacement for offset l)),
    // where offset index l encodes y - yt = (l - N1/2) * dv.
    for (std::size_t a = 0; a < N0; ++a) {
      const double xa = f.grid.point(0, a);
      for (std::size_t l = 0; l < N1; ++l) {
        const double dy = (static_cast<std::ptrdiff_t>(l) - h1) * dv;
        phase[a * N1 + l] = ebar(c * xa * dy);
      }
    }
    for (std::size_t i = 0; i < N0; ++i)
      for (std::size_t j = 0; j < N1; ++j) {
        fs[i * N1 + j] = f.at(i, j, k);
        gs[i * N1 + j] = g.at(i, j, k);
      }

    for (std::size_t a = 0; a < N0; ++a) {
      const cplx* ph = &phase[a * N1];
      for (std::size_t b = 0; b < N1; ++b) {
        const cplx fv = fs[a * N1 + b];
        if (fv == cplx(0.0)) continue;
        // Output indices: i = a + m - N0/2, j = b + l - N1/2.
        const std::ptrdiff_t mlo = std::max<std::ptrdiff_t>(0, h0 - static_cast<std::ptrdiff_t>(a));
        const std::ptrdiff_t mhi = std::min<std::ptrdiff_t>(N0, h0 + static_cast<std::ptrdiff_t>(N0) - static_cast<std::ptrdiff_t>(a));
        const std::ptrdiff_t llo = std::max<std::ptrdiff_t>(0, h1 - static_cast<std::ptrdiff_t>(b));
        const std::ptrdiff_t lhi = std::min<std::ptrdiff_t>(N1, h1 + static_cast<std::ptrdiff_t>(N1) - static_cast<std::ptrdiff_t>(b));
        for (std::ptrdiff_t m = mlo; m < mhi; ++m) {
          const std::size_t i = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(a) + m - h0);
          const cplx* grow = &gs[static_cast<std::size_t>(m) * N1];
          cplx* orow = &out.v[(i * N1) * Nr + k];
          for (std::ptrdiff_t l = llo; l < lhi; ++l) {
            const std::size_t j = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(b) + l - h1);
            orow[j * Nr] += fv * grow[l] * ph[l];
          }
        }
      }
    }
  }
  const double w = du * dv;
  for (auto& c : out.v) c *= w;
  return out;
}

/// Deformed product: phi x psi = wedge( vee(phi) *_sigma vee(psi) ).
inline SampledFunction deformed_mul(const SampledFunction& phi,
                                    const SampledFunction& psi,
                                    const ModelParams& params) {
  if (phi.picture != "pqr" || psi.picture != "pqr")
    throw std::invalid_argument("deformed_mul: expected pqr picture");
  return partial_fourier_wedge(
      twisted_conv_sigma(partial_fourier_vee(phi), partial_fourier_vee(psi),
                         params));
}

/// 1D Gaussian integral: int exp(-a t^2 + b t) dt, Re a > 0.
inline cplx gauss_integral_1d(cplx a, cplx b) {
  return std::sqrt(std::numbers::pi / a) * std::exp(b * b / (4.0 * a));
}

/**
 * Direct double-integral oracle for the deformed product at one point:
 *
 *   (phi x psi)(p,q,r) =
 *     int ebar[(p - p') xt] phi(p',q,r) psi(p, q + hbar eta(r) xt, r) dp' dxt
 *
 * The p'-integral is evaluated analytically (phi restricted to a pure
 * Gaussian-times-plane-wave profile in its first argument, poly == 1);
 * the xt-integral uses Simpson quadrature over the analytic Gaussian decay
 * window.
 */
inline cplx deformed_mul_oracle(const ClosedFormFunction& phi,
                                const ClosedFormFunction& psi, double p,
                                double q, double r, const ModelParams& params) {
  // phi(p',q,r) = amp * Gu(p') * Gv(q) * bump(r) with
  // Gu(p') = exp(-a_u (p'-u0)^2 + 2 pi i f_u p').
  const double br = phi.r_profile(r);
  if (br == 0.0) return cplx(0.0);
  const double dq = q - phi.v0;
  const cplx gv = std::exp(-phi.a_v * dq * dq + cplx(0.0, kTwoPi * phi.f_v * q));
  const cplx pref = phi.amp * gv * br;

  const cplx a = phi.a_u;
  const double heta = params.hbar * eta(params.lambda, r);

  // J(xt) = int Gu(p') e^{2 pi i xt p'} dp'
  //       = e^{2 pi i nu u0} sqrt(pi/a) exp(-pi^2 nu^2 / a), nu = f_u + xt.
  // Integrand decays like exp(-pi^2 nu^2 Re(1/a)); pick the window from that.
  const double re_inv_a = (a.real()) / std::norm(a);
  const double sigma = std::sqrt(1.0 / (2.0 * std::numbers::pi * std::numbers::pi * re_inv_a));
  const double center = -phi.f_u;
  const double W = 14.0 * sigma;
  const std::size_t M = 4096;  // Simpson panels (even)
  const double hstep = 2.0 * W / static_cast<double>(M);

  cplx acc(0.0);
  for (std::size_t m = 0; m <= M; ++m) {
    const double xt = center - W + hstep * static_cast<double>(m);
    const double nu = phi.f_u + xt;
    const cplx J = std::exp(cplx(0.0, kTwoPi * nu * phi.u0)) *
                   std::sqrt(std::numbers::pi / a) *
                   std::exp(-(std::numbers::pi * std::numbers::pi) * nu * nu / a);
    const cplx val = ebar(p * xt) * J * psi.eval(p, q + heta * xt, r);
    const double wgt = (m == 0 || m == M) ? 1.0 : (m % 2 == 1 ? 4.0 : 2.0);
    acc += wgt * val;
  }
  return pref * acc * (hstep / 3.0);
}

/// Involution in the (x,y,r)-picture:
/// f*(x,y,r) = conj f(-x,-y,r) * ebar(hbar eta(r) beta(x,y)).
inline SampledFunction involution_xyr(const SampledFunction& f,
                                      const ModelParams& params) {
  if (f.picture != "xyr")
    throw std::invalid_argument("involution_xyr: expected xyr picture");
  const std::size_t N0 = f.grid.N[0], N1 = f.grid.N[1], Nr = f.grid.N[2];
  SampledFunction out(f.grid, "xyr");
  for (std::size_t k = 0; k < Nr; ++k) {
    const double c = params.hbar * eta(params.lambda, f.grid.point(2, k));
    for (std::size_t i = 0; i < N0; ++i) {
      const std::size_t ri = (N0 - i) % N0;  // index of -x_i (wraps at -L)
      const double xi = f.grid.point(0, i);
      for (std::size_t j = 0; j < N1; ++j) {
        const std::size_t rj = (N1 - j) % N1;
        out.at(i, j, k) =
            std::conj(f.at(ri, rj, k)) * ebar(c * xi * f.grid.point(1, j));
      }
    }
  }
  return out;
}

/// Involution on the (p,q,r)-picture through the transform pair.
inline SampledFunction involution(const SampledFunction& phi,
                                  const ModelParams& params) {
  return partial_fourier_wedge(
      involution_xyr(partial_fourier_vee(phi), params));
}

/// Haar functional: the full-measure Riemann sum of phi.
inline cplx haar(const SampledFunction& phi) {
  cplx s(0.0);
  for (const auto& c : phi.v) s += c;
  return s * phi.grid.spacing(0) * phi.grid.spacing(1) * phi.grid.spacing(2);
}

/// Counit evaluated two ways: sample at the origin, and the r = 0 fiber
/// integral of the vee transform; both must agree.
struct CounitResult {
  cplx at_origin;
  cplx fiber_integral;
};

inline CounitResult counit(const SampledFunction& phi) {
  if (phi.picture != "pqr")
    throw std::invalid_argument("counit: expected pqr picture");
  const auto& g = phi.grid;
  CounitResult res;
  res.at_origin =
      phi.at(g.origin_index(0), g.origin_index(1), g.origin_index(2));
  const auto f = partial_fourier_vee(phi);
  cplx s(0.0);
  const std::size_t k0 = g.origin_index(2);
  for (std::size_t i = 0; i < g.N[0]; ++i)
    for (std::size_t j = 0; j < g.N[1]; ++j) s += f.at(i, j, k0);
  res.fiber_integral = s * g.spacing(0) * g.spacing(1);
  return res;
}

namespace detail {

/// Centered 1D continuum-normalized transform on a raw line (length n,
/// half-width L): out[m] = spacing * sum_j e^{sign 2 pi i k_m x_j} in[j].
inline void centered_line_dft(std::vector<cplx>& line, double L, int sign) {
  const std::size_t n = line.size();
  const double w = 2.0 * L / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j)
    if (j & 1) line[j] = -line[j];
  fft_pow2(line, sign);
  for (std::size_t m = 0; m < n; ++m) {
    line[m] *= w;
    if (m & 1) line[m] = -line[m];
  }
}

/**
 * Exact band-limited off-lattice evaluation of an n x n slice (half-width L
 * per axis) at the points (us[i], vs[j]): forward transform both axes, then
 * evaluate the trigonometric interpolant directly.  Points outside the
 * covered extent evaluate to 0 (the interpolant is periodic; the represented
 * functions vanish there).
 */
inline std::vector<cplx> eval_slice_offgrid(const std::vector<cplx>& slice,
                                            std::size_t n, double L,
                                            const std::vector<double>& us,
                                            const std::vector<double>& vs) {
  // Forward transform both axes: freq[m1 * n + m2] at dual points
  // k_m = (m - n/2) / (2 L); reconstruction carries weight 1 / (2 L) per axis.
  std::vector<cplx> freq(n * n);
  std::vector<cplx> line(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) line[j] = slice[i * n + j];
    centered_line_dft(line, L, -1);
    for (std::size_t j = 0; j < n; ++j) freq[i * n + j] = line[j];
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) line[i] = freq[i * n + j];
    centered_line_dft(line, L, -1);
    for (std::size_t i = 0; i < n; ++i) freq[i * n + j] = line[i];
  }
  const double dual_step = 1.0 / (2.0 * L);
  const auto mode_table = [&](const std::vector<double>& pts) {
    std::vector<cplx> tab(pts.size() * n);
    for (std::size_t t = 0; t < pts.size(); ++t)
      for (std::size_t m = 0; m < n; ++m) {
        const double k =
            (static_cast<double>(m) - static_cast<double>(n) / 2.0) * dual_step;
        tab[t * n + m] = e2pi(k * pts[t]);
      }
    return tab;
  };
  const auto eu = mode_table(us);
  const auto ev = mode_table(vs);
  // Contract the v-axis first, then the u-axis.
  std::vector<cplx> half(n * vs.size(), cplx(0.0));
  for (std::size_t m1 = 0; m1 < n; ++m1)
    for (std::size_t t = 0; t < vs.size(); ++t) {
      cplx s(0.0);
      for (std::size_t m2 = 0; m2 < n; ++m2)
        s += freq[m1 * n + m2] * ev[t * n + m2];
      half[m1 * vs.size() + t] = s;
    }
  std::vector<cplx> out(us.size() * vs.size(), cplx(0.0));
  for (std::size_t s = 0; s < us.size(); ++s) {
    if (std::abs(us[s]) >= L) continue;
    for (std::size_t t = 0; t < vs.size(); ++t) {
      if (std::abs(vs[t]) >= L) continue;
      cplx acc(0.0);
      for (std::size_t m1 = 0; m1 < n; ++m1)
        acc += eu[s * n + m1] * half[m1 * vs.size() + t];
      out[s * vs.size() + t] = acc * (dual_step * dual_step);
    }
  }
  return out;
}

}  // namespace detail

/**
 * Dagger map: phi^dag(p,q,r) = conj phi(-e^{-lambda r} p, -e^{-lambda r} q, -r).
 *
 * The fast-coordinate scaling leaves the lattice, so each source r-slice is
 * resampled by exact band-limited off-lattice evaluation; the r-reflection
 * itself is exact on the centered grid.
 */
inline SampledFunction dagger(const SampledFunction& phi,
                              const ModelParams& params) {
  if (phi.picture != "pqr")
    throw std::invalid_argument("dagger: expected pqr picture");
  const auto& g = phi.grid;
  const std::size_t N0 = g.N[0], N1 = g.N[1], Nr = g.N[2];
  if (N0 != N1 || g.L[0] != g.L[1])
    throw std::invalid_argument("dagger: fast axes must match");
  SampledFunction out(g, "pqr");
  std::vector<cplx> slice(N0 * N1);
  std::vector<double> us(N0), vs(N1);
  for (std::size_t k = 0; k < Nr; ++k) {
    if (k == 0) continue;  // source point r = +L lies off the grid
    const std::size_t ks = Nr - k;  // source slice at r = -r_k
    bool all_zero = true;
    for (std::size_t i = 0; i < N0 && all_zero; ++i)
      for (std::size_t j = 0; j < N1 && all_zero; ++j)
        if (phi.at(i, j, ks) != cplx(0.0)) all_zero = false;
    if (all_zero) continue;
    for (std::size_t i = 0; i < N0; ++i)
      for (std::size_t j = 0; j < N1; ++j) slice[i * N1 + j] = phi.at(i, j, ks);
    const double scale = std::exp(-params.lambda * g.point(2, k));
    for (std::size_t i = 0; i < N0; ++i) us[i] = -scale * g.point(0, i);
    for (std::size_t j = 0; j < N1; ++j) vs[j] = -scale * g.point(1, j);
    const auto vals = detail::eval_slice_offgrid(slice, N0, g.L[0], us, vs);
    for (std::size_t i = 0; i < N0; ++i)
      for (std::size_t j = 0; j < N1; ++j)
        out.at(i, j, k) = std::conj(vals[i * N1 + j]);
  }
  return out;
}

/// Antipode computed in both orders; the two must agree within the
/// interpolation budget.
struct AntipodeResult {
  SampledFunction star_then_dagger;
  SampledFunction dagger_then_star;
};

inline AntipodeResult antipode(const SampledFunction& phi,
                               const ModelParams& params) {
  AntipodeResult res;
  res.star_then_dagger = dagger(involution(phi, params), params);
  res.dagger_then_star = involution(dagger(phi, params), params);
  return res;
}

/// L1 and L2 defect magnitudes for limit sweeps.
struct DefectNorms {
  double l1 = 0.0;
  double l2 = 0.0;
};

/**
 * Semiclassical defect on the grid:
 *   || (phi x_hbar psi - psi x_hbar phi) / hbar - (i / 2 pi) {phi, psi} ||
 * with the Poisson bracket eta_lambda(r) (d_p phi d_q psi - d_p psi d_q phi)
 * evaluated analytically from the closed forms.
 */
inline DefectNorms semiclassical_defect(const ClosedFormFunction& phi,
                                        const ClosedFormFunction& psi,
                                        const Grid& grid,
                                        const ModelParams& params) {
  if (params.hbar == 0.0)
    throw std::invalid_argument("semiclassical_defect: hbar must be nonzero");
  const auto phi_s = phi.sample(grid, "pqr");
  const auto psi_s = psi.sample(grid, "pqr");
  const auto ab = deformed_mul(phi_s, psi_s, params);
  const auto ba = deformed_mul(psi_s, phi_s, params);

  const auto dp_phi = phi.d_du(), dq_phi = phi.d_dv();
  const auto dp_psi = psi.d_du(), dq_psi = psi.d_dv();
  const cplx i_over_2pi(0.0, 1.0 / kTwoPi);

  DefectNorms out;
  for (std::size_t i = 0; i < grid.N[0]; ++i)
    for (std::size_t j = 0; j < grid.N[1]; ++j)
      for (std::size_t k = 0; k < grid.N[2]; ++k) {
        const double p = grid.point(0, i), q = grid.point(1, j),
                     r = grid.point(2, k);
        const cplx pb =
            eta(params.lambda, r) *
            (dp_phi.eval(p, q, r) * dq_psi.eval(p, q, r) -
             dp_psi.eval(p, q, r) * dq_phi.eval(p, q, r));
        const cplx defect =
            (ab.at(i, j, k) - ba.at(i, j, k)) / params.hbar - i_over_2pi * pb;
        out.l1 += std::abs(defect);
        out.l2 += std::norm(defect);
      }
  const double w = grid.spacing(0) * grid.spacing(1) * grid.spacing(2);
  out.l1 *= w;
  out.l2 = std::sqrt(out.l2 * w);
  return out;
}

}  // namespace qheis

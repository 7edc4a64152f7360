#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "qheis/closed_form.hpp"
#include "qheis/common.hpp"
#include "qheis/gauss_integral.hpp"
#include "qheis/gaussian_vector.hpp"

namespace qheis {

/// Pointwise complex conjugate of a Gaussian profile.
inline GaussData gauss_conj(GaussData d) {
  d.c0 = std::conj(d.c0);
  for (auto& z : d.A) z = std::conj(z);
  for (auto& z : d.b) z = std::conj(z);
  return d;
}

/// Product of two Gaussian profiles over the same variables.
inline GaussData gauss_product(const GaussData& a, const GaussData& b) {
  if (a.nf != b.nf)
    throw std::invalid_argument("gauss_product: dimension mismatch");
  GaussData out = a;
  for (std::size_t i = 0; i < a.A.size(); ++i) out.A[i] += b.A[i];
  for (std::size_t i = 0; i < a.nf; ++i) out.b[i] += b.b[i];
  out.c0 *= b.c0;
  return out;
}

/// Add the exponent term coef * v_i * v_j (i != j) to a Gaussian profile.
inline void gauss_add_cross(GaussData& d, std::size_t i, std::size_t j,
                            cplx coef) {
  d.A[i * d.nf + j] -= 0.5 * coef;
  d.A[j * d.nf + i] -= 0.5 * coef;
}

/// Pull a Gaussian profile back along the real affine map f = M v + t,
/// where M is (d.nf x k) row-major; the result is a profile in v.
inline GaussData gauss_pullback(const GaussData& d,
                                const std::vector<double>& M,
                                const std::vector<double>& t, std::size_t k) {
  const std::size_t m = d.nf;
  if (M.size() != m * k || t.size() != m)
    throw std::invalid_argument("gauss_pullback: shape mismatch");
  GaussData out(k);
  // A_out = M^T A M,  b_out = M^T (b - 2 A t),  c_out = c exp(-t^T A t + b^T t).
  std::vector<cplx> At(m, cplx(0.0));
  cplx tAt(0.0), bt(0.0);
  for (std::size_t i = 0; i < m; ++i) {
    cplx s(0.0);
    for (std::size_t j = 0; j < m; ++j) s += d.A[i * m + j] * t[j];
    At[i] = s;
    tAt += t[i] * s;
    bt += d.b[i] * t[i];
  }
  for (std::size_t a = 0; a < k; ++a) {
    cplx s(0.0);
    for (std::size_t i = 0; i < m; ++i) s += M[i * k + a] * (d.b[i] - 2.0 * At[i]);
    out.b[a] = s;
  }
  std::vector<cplx> AM(m * k, cplx(0.0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t a = 0; a < k; ++a) {
      cplx s(0.0);
      for (std::size_t j = 0; j < m; ++j) s += d.A[i * m + j] * M[j * k + a];
      AM[i * k + a] = s;
    }
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b2 = 0; b2 < k; ++b2) {
      cplx s(0.0);
      for (std::size_t i = 0; i < m; ++i) s += M[i * k + a] * AM[i * k + b2];
      out.A[a * k + b2] = s;
    }
  out.c0 = d.c0 * std::exp(-tAt + bt);
  return out;
}

/**
 * One fixed-r slice of the fiberwise e(+) transform of a closed-form
 * function with constant polynomial part:
 *
 *   f_vee(x, y, r) = int e(p x + q y) f(p, q, r) dp dq,
 *
 * which is again a complex Gaussian in (x, y).  Per axis,
 * int e^{2 pi i p x} e^{-a (p-u0)^2 + 2 pi i f0 p} dp
 *   = sqrt(pi/a) e^{2 pi i u0 (x+f0)} e^{-pi^2 (x+f0)^2 / a}.
 */
inline GaussData cff_vee_slice(const ClosedFormFunction& f, double r) {
  for (std::size_t i = 0; i < f.poly.coeff.size(); ++i)
    for (std::size_t j = 0; j < f.poly.coeff[i].size(); ++j)
      if ((i != 0 || j != 0) && f.poly.coeff[i][j] != cplx(0.0))
        throw std::invalid_argument(
            "cff_vee_slice: polynomial part must be constant");
  const cplx cpoly =
      f.poly.coeff.empty() || f.poly.coeff[0].empty() ? cplx(1.0)
                                                      : f.poly.coeff[0][0];
  const double pi = std::numbers::pi;
  GaussData out(2);
  const cplx au = f.a_u, av = f.a_v;
  out.A[0] = pi * pi / au;
  out.A[3] = pi * pi / av;
  out.b[0] = -2.0 * pi * pi * f.f_u / au + cplx(0.0, kTwoPi * f.u0);
  out.b[1] = -2.0 * pi * pi * f.f_v / av + cplx(0.0, kTwoPi * f.v0);
  out.c0 = f.amp * cpoly * f.r_profile(r) * std::sqrt(pi / au) *
           std::sqrt(pi / av) *
           std::exp(-pi * pi * f.f_u * f.f_u / au +
                    cplx(0.0, kTwoPi * f.u0 * f.f_u)) *
           std::exp(-pi * pi * f.f_v * f.f_v / av +
                    cplx(0.0, kTwoPi * f.v0 * f.f_v));
  return out;
}

/// Full three-axis e(+) transform of a closed-form function with constant
/// polynomial part and Gaussian r-profile, evaluated at one point:
///
///   f_inv3(a, b, c) = int e(p a + q b + r c) f(p, q, r) dp dq dr.
inline cplx cff_inv_fourier3(const ClosedFormFunction& f, double a, double b,
                             double c) {
  if (!f.gaussian_r)
    throw std::invalid_argument("cff_inv_fourier3: needs a Gaussian r profile");
  for (std::size_t i = 0; i < f.poly.coeff.size(); ++i)
    for (std::size_t j = 0; j < f.poly.coeff[i].size(); ++j)
      if ((i != 0 || j != 0) && f.poly.coeff[i][j] != cplx(0.0))
        throw std::invalid_argument(
            "cff_inv_fourier3: polynomial part must be constant");
  const cplx cpoly =
      f.poly.coeff.empty() || f.poly.coeff[0].empty() ? cplx(1.0)
                                                      : f.poly.coeff[0][0];
  const double pi = std::numbers::pi;
  const auto axis = [pi](cplx aa, double x0, double f0, double x) {
    const double s = x + f0;
    return std::sqrt(pi / aa) *
           std::exp(-pi * pi * s * s / aa + cplx(0.0, kTwoPi * x0 * s));
  };
  return f.amp * cpoly * axis(f.a_u, f.u0, f.f_u, a) *
         axis(f.a_v, f.v0, f.f_v, b) * axis(cplx(f.a_r), f.r0, 0.0, c);
}

/// Kernel slice of the adjoint-twisted function
/// f_dag(p,q,r) = conj f(-e^{-lambda r} p, -e^{-lambda r} q, -r):
/// f_dag_vee(x,y,r) = e^{2 lambda r} conj[ f_vee(e^{lambda r} x,
/// e^{lambda r} y, -r) ].
inline GaussData dagger_vee_slice(const ClosedFormFunction& f, double lambda,
                                  double r) {
  const double s = std::exp(lambda * r);
  GaussData d = cff_vee_slice(f, -r);
  d = gauss_pullback(d, {s, 0.0, 0.0, s}, {0.0, 0.0}, 2);
  d = gauss_conj(d);
  d.c0 *= std::exp(2.0 * lambda * r);
  return d;
}

/**
 * Convolution-type integral operator on one or more plain legs of a
 * Gaussian slice vector.  For each listed leg base o (coordinates x at o,
 * y at o+1, slow r at o+2) the operator contributes one auxiliary pair
 * (xt_l, yt_l), and the combined action is
 *
 *   (K xi)(...) = int kernel(slow)(xt_1, yt_1, ...)
 *                 prod_l ebar[eta(r_l) xt_l (y_l - yt_l)]
 *                 xi(..., x_l - xt_l, y_l - yt_l, ...)  d(xt yt),
 *
 * with the auxiliary Gaussian integral evaluated in closed form.  This is
 * the slice-vector realization of the regular-representation operators
 * attached to integrable functions (one leg) and of explicit two-leg
 * kernels.
 */
inline GaussianSliceVector apply_conv_kernel(
    const GaussianSliceVector& v, const std::vector<std::size_t>& legs,
    std::function<GaussData(const std::vector<double>& slow)> kernel) {
  GaussianSliceVector out;
  out.dim = v.dim;
  out.fast = v.fast;
  out.lambda = v.lambda;
  const auto slow = v.slow_indices();
  const std::size_t nf = v.fast.size();
  const std::size_t nl = legs.size();

  std::vector<std::size_t> fx(nl), fy(nl), sr(nl);
  for (std::size_t l = 0; l < nl; ++l) {
    fx[l] = v.fast_pos(legs[l] + 0);
    fy[l] = v.fast_pos(legs[l] + 1);
    sr[l] = slow.size();
    for (std::size_t k = 0; k < slow.size(); ++k)
      if (slow[k] == legs[l] + 2) sr[l] = k;
    if (sr[l] == slow.size())
      throw std::invalid_argument("apply_conv_kernel: r coordinate not slow");
  }

  out.data = [v, kernel, fx, fy, sr, nf, nl](const std::vector<double>& s) {
    const double lam = v.lambda;
    const std::size_t na = 2 * nl;
    const GaussData in = v.data(s);
    const GaussData K = kernel(s);
    if (K.nf != na)
      throw std::invalid_argument("apply_conv_kernel: kernel arity");

    // Variables: 0..nf-1 output fast coords, then the aux pairs.
    QuadForm qf(nf + na);
    const auto J = [&](std::size_t i, std::size_t var) -> double {
      if (var < nf) return i == var ? 1.0 : 0.0;
      const std::size_t a = var - nf, l = a / 2;
      if (a % 2 == 0) return i == fx[l] ? -1.0 : 0.0;
      return i == fy[l] ? -1.0 : 0.0;
    };
    for (std::size_t a = 0; a < nf + na; ++a)
      for (std::size_t b2 = 0; b2 < nf + na; ++b2) {
        cplx acc(0.0);
        for (std::size_t i = 0; i < nf; ++i) {
          if (J(i, a) == 0.0) continue;
          for (std::size_t j = 0; j < nf; ++j)
            acc += J(i, a) * in.A[i * nf + j] * J(j, b2);
        }
        qf.A[a * (nf + na) + b2] = acc;
      }
    for (std::size_t a = 0; a < nf + na; ++a) {
      cplx acc(0.0);
      for (std::size_t i = 0; i < nf; ++i) acc += in.b[i] * J(i, a);
      qf.b[a] = acc;
    }
    // Kernel profile over the aux block.
    for (std::size_t a = 0; a < na; ++a) {
      qf.b[nf + a] += K.b[a];
      for (std::size_t b2 = 0; b2 < na; ++b2)
        qf.A[(nf + a) * (nf + na) + (nf + b2)] += K.A[a * na + b2];
    }
    qf.c0 = in.c0 * K.c0;
    // Twisting phases ebar[eta(r_l) xt_l (y_l - yt_l)].
    const cplx twopii(0.0, kTwoPi);
    for (std::size_t l = 0; l < nl; ++l) {
      const cplx et = twopii * eta(lam, s[sr[l]]);
      qf.add_quad(nf + 2 * l, fy[l], et);
      qf.add_quad(nf + 2 * l, nf + 2 * l + 1, -et);
    }
    qf.integrate_trailing(na);

    GaussData outd(nf);
    outd.c0 = qf.c0;
    outd.A = qf.A;
    outd.b = qf.b;
    return outd;
  };
  return out;
}

/// Regular-representation operator of a closed-form function on the plain
/// leg based at `leg` of a Gaussian slice vector.
inline GaussianSliceVector apply_L_function(const GaussianSliceVector& v,
                                            std::size_t leg,
                                            const ClosedFormFunction& f) {
  const auto slow = v.slow_indices();
  std::size_t sr = slow.size();
  for (std::size_t k = 0; k < slow.size(); ++k)
    if (slow[k] == leg + 2) sr = k;
  if (sr == slow.size())
    throw std::invalid_argument("apply_L_function: r coordinate not slow");
  return apply_conv_kernel(
      v, {leg}, [f, sr](const std::vector<double>& s) {
        return cff_vee_slice(f, s[sr]);
      });
}

/**
 * Explicit two-leg kernel of (coproduct of phi) * (1 x L_g) on two plain
 * legs with bases leg1, leg2: the aux tuple is (xt, yt, xt', yt') and the
 * kernel value is
 *
 *   e^{-2 lambda r'} ebar[eta(r') (e^{-lambda r'} xt)(yt' - e^{-lambda r'} yt)]
 *   phi_vee(e^{-lambda r'} xt, e^{-lambda r'} yt, r + r')
 *   g_vee(xt' - e^{-lambda r'} xt, yt' - e^{-lambda r'} yt, r').
 */
inline GaussianSliceVector apply_comult_product_kernel(
    const GaussianSliceVector& v, std::size_t leg1, std::size_t leg2,
    const ClosedFormFunction& phi, const ClosedFormFunction& g) {
  const auto slow = v.slow_indices();
  std::size_t sr = slow.size(), srp = slow.size();
  for (std::size_t k = 0; k < slow.size(); ++k) {
    if (slow[k] == leg1 + 2) sr = k;
    if (slow[k] == leg2 + 2) srp = k;
  }
  if (sr == slow.size() || srp == slow.size())
    throw std::invalid_argument(
        "apply_comult_product_kernel: r coordinates not slow");
  const double lambda = v.lambda;
  const auto kernel = [phi, g, sr, srp,
                       lambda](const std::vector<double>& s) {
    const double r = s[sr], rp = s[srp];
    const double dn = std::exp(-lambda * rp);
    const GaussData kphi =
        gauss_pullback(cff_vee_slice(phi, r + rp),
                       {dn, 0.0, 0.0, 0.0, 0.0, dn, 0.0, 0.0},
                       {0.0, 0.0}, 4);
    const GaussData kg =
        gauss_pullback(cff_vee_slice(g, rp),
                       {-dn, 0.0, 1.0, 0.0, 0.0, -dn, 0.0, 1.0},
                       {0.0, 0.0}, 4);
    GaussData K = gauss_product(kphi, kg);
    K.c0 *= dn * dn;
    const cplx coef(0.0, -kTwoPi * eta(lambda, rp) * dn);
    gauss_add_cross(K, 0, 3, coef);        // xt * yt'
    gauss_add_cross(K, 0, 1, -coef * dn);  // xt * yt
    return K;
  };
  return apply_conv_kernel(v, {leg1, leg2}, kernel);
}

}  // namespace qheis

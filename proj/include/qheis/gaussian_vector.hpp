#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "qheis/affine_op.hpp"
#include "qheis/common.hpp"
#include "qheis/gauss_integral.hpp"

namespace qheis {

/// Gaussian profile in the fast coordinates at one fixed tuple of slow
/// coordinates: value = c0 * exp(-f^T A f + b^T f).
struct GaussData {
  std::size_t nf = 0;
  cplx c0{1.0};
  std::vector<cplx> A;  // nf x nf, symmetric
  std::vector<cplx> b;  // nf

  explicit GaussData(std::size_t fast_count = 0)
      : nf(fast_count), A(fast_count * fast_count, cplx(0.0)),
        b(fast_count, cplx(0.0)) {}

  cplx eval(const std::vector<double>& f) const {
    cplx q(0.0);
    for (std::size_t i = 0; i < nf; ++i) {
      cplx row(0.0);
      for (std::size_t j = 0; j < nf; ++j) row += A[i * nf + j] * f[j];
      q += f[i] * (b[i] - row);
    }
    return c0 * std::exp(q);
  }
};

/**
 * Test vector for the geometric operators: Gaussian in the designated fast
 * coordinates (the x/y type variables), with the profile data an arbitrary
 * smooth closure over the remaining slow coordinates (the r/w type
 * variables).  The family is closed under AffinePhaseOp application and
 * under the quadratic-kernel factor of the universal R operator, so defects
 * of operator identities can be evaluated pointwise without discretization.
 */
struct GaussianSliceVector {
  std::size_t dim = 0;
  std::vector<std::size_t> fast;  // increasing indices into the full tuple
  double lambda = 1.0;
  std::function<GaussData(const std::vector<double>& slow_vals)> data;

  std::vector<std::size_t> slow_indices() const {
    std::vector<std::size_t> slow;
    std::size_t fpos = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      if (fpos < fast.size() && fast[fpos] == i) {
        ++fpos;
      } else {
        slow.push_back(i);
      }
    }
    return slow;
  }

  /// Position of full-tuple index `idx` within the fast list.
  std::size_t fast_pos(std::size_t idx) const {
    for (std::size_t k = 0; k < fast.size(); ++k)
      if (fast[k] == idx) return k;
    throw std::invalid_argument("GaussianSliceVector: not a fast coordinate");
  }

  cplx eval(const std::vector<double>& full) const {
    if (full.size() != dim)
      throw std::invalid_argument("GaussianSliceVector: bad point dimension");
    std::vector<double> fvals(fast.size()), svals;
    svals.reserve(dim - fast.size());
    std::size_t fpos = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      if (fpos < fast.size() && fast[fpos] == i) {
        fvals[fpos++] = full[i];
      } else {
        svals.push_back(full[i]);
      }
    }
    return data(svals).eval(fvals);
  }
};

/**
 * Apply an AffinePhaseOp to a Gaussian slice vector.  Requires the operator
 * substitution to map slow coordinates through slow coordinates only and
 * fast coordinates affinely (coefficients may depend on the slow ones);
 * every operator in this engine has that shape.  The affine map, the
 * amplitude and the (at most quadratic) phase are extracted per slow slice
 * by exact probing at 0, +-e_i and e_i + e_j.
 */
inline GaussianSliceVector apply_affine(const AffinePhaseOp& op,
                                        const GaussianSliceVector& v) {
  if (op.dim != v.dim)
    throw std::invalid_argument("apply_affine: dimension mismatch");
  GaussianSliceVector out;
  out.dim = v.dim;
  out.fast = v.fast;
  out.lambda = v.lambda;
  const auto slow = v.slow_indices();
  const std::size_t nf = v.fast.size();

  out.data = [op, v, slow, nf](const std::vector<double>& s_out) {
    const double lam = v.lambda;
    std::vector<double> probe(v.dim, 0.0);
    for (std::size_t k = 0; k < slow.size(); ++k) probe[slow[k]] = s_out[k];

    const auto set_fast = [&](const std::vector<double>& f) {
      for (std::size_t k = 0; k < nf; ++k) probe[v.fast[k]] = f[k];
    };
    const auto fast_image = [&](std::vector<double>& dst) {
      for (std::size_t k = 0; k < nf; ++k)
        dst[k] = op.subst[v.fast[k]].eval(probe, lam);
    };

    std::vector<double> f0(nf, 0.0);
    set_fast(f0);
    // Input slow coordinates and translation part.
    std::vector<double> s_in(slow.size());
    for (std::size_t k = 0; k < slow.size(); ++k)
      s_in[k] = op.subst[slow[k]].eval(probe, lam);
    std::vector<double> t(nf);
    fast_image(t);
    const double amp0 = op.amp.eval(probe, lam);
    const double p0 = op.phase.eval(probe, lam);

    // Linear part M and phase probes.
    std::vector<double> M(nf * nf);  // M[i*nf+j]: d(f_in_i)/d(f_out_j)
    std::vector<double> php(nf), phm(nf), col(nf);
    for (std::size_t j = 0; j < nf; ++j) {
      f0[j] = 1.0;
      set_fast(f0);
      fast_image(col);
      for (std::size_t i = 0; i < nf; ++i) M[i * nf + j] = col[i] - t[i];
      php[j] = op.phase.eval(probe, lam);
      f0[j] = -1.0;
      set_fast(f0);
      phm[j] = op.phase.eval(probe, lam);
      f0[j] = 0.0;
    }
    std::vector<double> P(nf * nf, 0.0), Lp(nf);
    for (std::size_t j = 0; j < nf; ++j) {
      P[j * nf + j] = 0.5 * (php[j] + phm[j]) - p0;
      Lp[j] = 0.5 * (php[j] - phm[j]);
    }
    for (std::size_t i = 0; i < nf; ++i)
      for (std::size_t j = i + 1; j < nf; ++j) {
        f0[i] = 1.0;
        f0[j] = 1.0;
        set_fast(f0);
        const double pij = op.phase.eval(probe, lam);
        f0[i] = 0.0;
        f0[j] = 0.0;
        const double q = 0.5 * (pij - php[i] - php[j] + p0);
        P[i * nf + j] = q;
        P[j * nf + i] = q;
      }
    set_fast(f0);

    GaussData in = v.data(s_in);
    if (op.antilinear) {
      in.c0 = std::conj(in.c0);
      for (auto& z : in.A) z = std::conj(z);
      for (auto& z : in.b) z = std::conj(z);
    }

    // Compose: exponent -(Mf+t)^T A (Mf+t) + b^T (Mf+t) - 2 pi i * phase(f).
    GaussData outd(nf);
    const cplx twopii(0.0, kTwoPi);
    std::vector<cplx> AM(nf * nf, cplx(0.0));  // A_in * M
    for (std::size_t i = 0; i < nf; ++i)
      for (std::size_t j = 0; j < nf; ++j) {
        cplx s(0.0);
        for (std::size_t k = 0; k < nf; ++k)
          s += in.A[i * nf + k] * M[k * nf + j];
        AM[i * nf + j] = s;
      }
    for (std::size_t i = 0; i < nf; ++i)
      for (std::size_t j = 0; j < nf; ++j) {
        cplx s(0.0);
        for (std::size_t k = 0; k < nf; ++k)
          s += M[k * nf + i] * AM[k * nf + j];
        outd.A[i * nf + j] = s + twopii * P[i * nf + j];
      }
    cplx t_At(0.0), b_t(0.0);
    std::vector<cplx> At(nf, cplx(0.0));
    for (std::size_t i = 0; i < nf; ++i) {
      cplx s(0.0);
      for (std::size_t k = 0; k < nf; ++k) s += in.A[i * nf + k] * t[k];
      At[i] = s;
      t_At += t[i] * s;
      b_t += in.b[i] * t[i];
    }
    for (std::size_t i = 0; i < nf; ++i) {
      cplx s(0.0);
      for (std::size_t k = 0; k < nf; ++k)
        s += M[k * nf + i] * (in.b[k] - 2.0 * At[k]);
      outd.b[i] = s - twopii * Lp[i];
    }
    outd.c0 = amp0 * in.c0 * std::exp(-t_At + b_t - twopii * p0) *
              cplx(1.0, 0.0);
    return outd;
  };
  return out;
}

/**
 * Quadratic-kernel factor of the universal R operator, acting on legs with
 * bases leg1 and leg2 of the extended layout (x,y,r,w per leg):
 *
 *   (P xi)(...) = (1/|c|) int exp(sign 2 pi i xt yt / c)
 *                 ebar[sign eta(r) xt y] xi(..., x - sign xt, ...,
 *                 y' - sign yt, ...) dxt dyt,    c = 2 lambda e^{-lambda r'},
 *
 * where (x, y, r) live on leg1 and (y', r') on leg2.  sign=+1 gives the
 * forward factor, sign=-1 its adjoint.  When c = 0 (lambda = 0) the operator
 * is the identity.  The aux integral is evaluated analytically, keeping the
 * result inside the Gaussian slice family.
 */
inline GaussianSliceVector apply_phi_prime(const GaussianSliceVector& v,
                                           std::size_t leg1, std::size_t leg2,
                                           int sign = +1) {
  GaussianSliceVector out;
  out.dim = v.dim;
  out.fast = v.fast;
  out.lambda = v.lambda;
  const std::size_t fx = v.fast_pos(leg1 + 0);
  const std::size_t fy = v.fast_pos(leg1 + 1);
  const std::size_t fyp = v.fast_pos(leg2 + 1);
  const auto slow = v.slow_indices();
  std::size_t sr = slow.size(), srp = slow.size();
  for (std::size_t k = 0; k < slow.size(); ++k) {
    if (slow[k] == leg1 + 2) sr = k;
    if (slow[k] == leg2 + 2) srp = k;
  }
  if (sr == slow.size() || srp == slow.size())
    throw std::invalid_argument("apply_phi_prime: r coordinates must be slow");
  const std::size_t nf = v.fast.size();

  out.data = [v, fx, fy, fyp, sr, srp, nf, sign](
                 const std::vector<double>& s) {
    const double lam = v.lambda;
    const double r = s[sr], rp = s[srp];
    const double c = 2.0 * lam * std::exp(-lam * rp);
    const GaussData in = v.data(s);
    if (c == 0.0) return in;

    // Variables: 0..nf-1 = output fast coords, nf = xt, nf+1 = yt.
    // Input fast coords: f_in = f_out except
    //   f_in[fx]  = f_out[fx]  - sign * xt,
    //   f_in[fyp] = f_out[fyp] - sign * yt.
    QuadForm qf(nf + 2);
    const auto J = [&](std::size_t i, std::size_t vvar) -> double {
      if (vvar < nf) return i == vvar ? 1.0 : 0.0;
      if (vvar == nf) return i == fx ? -static_cast<double>(sign) : 0.0;
      return i == fyp ? -static_cast<double>(sign) : 0.0;
    };
    for (std::size_t a = 0; a < nf + 2; ++a)
      for (std::size_t b2 = 0; b2 < nf + 2; ++b2) {
        cplx sacc(0.0);
        for (std::size_t i = 0; i < nf; ++i) {
          if (J(i, a) == 0.0) continue;
          for (std::size_t j = 0; j < nf; ++j)
            sacc += J(i, a) * in.A[i * nf + j] * J(j, b2);
        }
        qf.A[a * (nf + 2) + b2] = sacc;
      }
    for (std::size_t a = 0; a < nf + 2; ++a) {
      cplx sacc(0.0);
      for (std::size_t i = 0; i < nf; ++i) sacc += in.b[i] * J(i, a);
      qf.b[a] = sacc;
    }
    const cplx twopii(0.0, kTwoPi);
    // exp(sign 2 pi i xt yt / c): exponent += sign 2 pi i / c * xt * yt.
    qf.add_quad(nf, nf + 1, -static_cast<double>(sign) * twopii / c);
    // ebar[sign eta(r) xt y]: exponent -= sign 2 pi i eta(r) xt f_out[fy].
    qf.add_quad(nf, fy, static_cast<double>(sign) * twopii * eta(lam, r));
    qf.c0 = in.c0 / std::abs(c);
    qf.integrate_trailing(2);

    GaussData outd(nf);
    outd.c0 = qf.c0;
    outd.A = qf.A;
    outd.b = qf.b;
    return outd;
  };
  return out;
}

/// Universal R operator (or its adjoint for sign=-1) on two extended legs
/// embedded at the given bases of a larger tuple.
inline GaussianSliceVector apply_R(const AffinePhaseOp& phi_embedded,
                                   const GaussianSliceVector& v,
                                   std::size_t leg1, std::size_t leg2,
                                   int sign = +1) {
  if (sign > 0)  // R = Phi Phi'
    return apply_affine(phi_embedded, apply_phi_prime(v, leg1, leg2, +1));
  // R* = Phi'* Phi*
  return apply_phi_prime(apply_affine(phi_embedded.inverse(), v), leg1, leg2,
                         -1);
}

}  // namespace qheis

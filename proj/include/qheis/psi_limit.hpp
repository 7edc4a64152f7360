#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "qheis/algebra.hpp"
#include "qheis/closed_form.hpp"
#include "qheis/common.hpp"
#include "qheis/report.hpp"
#include "qheis/suites.hpp"

namespace qheis {

/**
 * Two-leg member of the extended function space in the (p, q, r, w)
 * variables: a product of one closed form per leg and Gaussian w-profiles,
 *
 *   F(p,q,r,w,p',q',r',w') = leg1(p,q,r) e^{-a_w (w - w1)^2}
 *                            leg2(p',q',r') e^{-a_w (w' - w2)^2}.
 *
 * Closed under the partial derivatives in p, q, p', q' that the classical
 * limit of the R conjugation needs.
 */
struct ExtPairFunction {
  ClosedFormFunction leg1, leg2;
  double a_w = 4.0;
  double w1 = 0.0, w2 = 0.0;

  double w_profile(double w, double wp) const {
    return std::exp(-a_w * (w - w1) * (w - w1) -
                    a_w * (wp - w2) * (wp - w2));
  }

  cplx eval(const std::array<double, 8>& v) const {
    return leg1.eval(v[0], v[1], v[2]) * leg2.eval(v[4], v[5], v[6]) *
           w_profile(v[3], v[7]);
  }
};

/**
 * Conjugation of a two-leg function by the universal R operator at
 * deformation parameter lambda, as an explicit point transformation with
 * phase.  At lambda = 0 this is exactly the identity.
 */
inline cplx psi_conjugation(const ExtPairFunction& F, double lambda,
                            const std::array<double, 8>& v) {
  const double p = v[0], q = v[1], r = v[2], w = v[3];
  const double pp = v[4], qp = v[5], rp = v[6], wp = v[7];
  const double er = std::exp(-lambda * r);
  const cplx phase = ebar(2.0 * lambda * er * p * qp) *
                     e2pi(2.0 * lambda * std::exp(w - wp - lambda * r) * p * qp);
  const std::array<double, 8> u{
      std::exp(lambda * rp) * p,
      std::exp(-lambda * rp) * q +
          2.0 * lambda * std::exp(-lambda * r - lambda * rp) *
              eta(lambda, r) * qp,
      r,
      w,
      std::exp(lambda * r) * pp -
          2.0 * lambda * std::exp(w - wp) * eta(lambda, rp) * p,
      std::exp(-lambda * r) * qp,
      rp,
      wp};
  return phase * F.eval(u);
}

/**
 * Closed-form reduction of the derivation [psi, F] attached to the
 * classical r-matrix (psi = r s' + r' s + 2 p . q' as a function on the
 * doubled dual):
 *
 *   [psi, F] = 2 p q' (1 - e^{w - w'}) F
 *            - (1 / 2 pi i) [ r' (p d_p F - q d_q F)
 *                           + r (p' d_p' F - q' d_q' F)
 *                           + 2 r q' d_q F - 2 r' e^{w - w'} p d_p' F ].
 */
inline cplx psi_bracket(const ExtPairFunction& F,
                        const std::array<double, 8>& v) {
  const double p = v[0], q = v[1], r = v[2], w = v[3];
  const double pp = v[4], qp = v[5], rp = v[6], wp = v[7];
  const double ew = std::exp(w - wp);
  const double wfac = F.w_profile(w, wp);
  const cplx g1 = F.leg1.eval(p, q, r), g2 = F.leg2.eval(pp, qp, rp);
  const cplx d1 = F.leg1.d_du().eval(p, q, r) * g2;
  const cplx d2 = F.leg1.d_dv().eval(p, q, r) * g2;
  const cplx d5 = g1 * F.leg2.d_du().eval(pp, qp, rp);
  const cplx d6 = g1 * F.leg2.d_dv().eval(pp, qp, rp);
  const cplx corr = rp * (p * d1 - q * d2) + r * (pp * d5 - qp * d6) +
                    2.0 * r * qp * d2 - 2.0 * rp * ew * p * d5;
  return (2.0 * p * qp * (1.0 - ew) * g1 * g2 - corr / cplx(0.0, kTwoPi)) *
         wfac;
}

/**
 * Quadrature oracle for [psi, F]: the defining oscillatory integral with
 * every delta pairing regularized at width eps.  The conjugate variables
 * are integrated analytically,
 *
 *   int e(a b) e^{-pi eps^2 a^2} da = (1/eps) e^{-pi b^2 / eps^2},
 *   int a e(a b) e^{-pi eps^2 a^2} da = (i b / eps^3) e^{-pi b^2 / eps^2},
 *
 * leaving Gaussian-weighted sums over the four variables that enter the
 * arguments of F.  For the product family the 4D tensor quadrature
 * factorizes into two 2D sums per leg.
 */
inline cplx psi_bracket_oracle_at(const ExtPairFunction& F,
                                  const std::array<double, 8>& v,
                                  double eps) {
  const double p = v[0], q = v[1], r = v[2], w = v[3];
  const double pp = v[4], qp = v[5], rp = v[6], wp = v[7];
  const double ew = std::exp(w - wp);
  const double wfac = F.w_profile(w, wp);

  const std::size_t n = 65;
  const double W = 5.0 * eps;
  const double h = 2.0 * W / static_cast<double>(n - 1);
  std::vector<double> t(n), smooth(n);
  std::vector<cplx> deriv(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = -W + static_cast<double>(i) * h;
    const double g = std::exp(-std::numbers::pi * t[i] * t[i] / (eps * eps));
    smooth[i] = g / eps;
    deriv[i] = cplx(0.0, t[i] / (eps * eps * eps)) * g;
  }

  // Leg 1 sums over (wt, qt): F's first pair of arguments.
  cplx s1_00(0.0), s1_w(0.0), s1_q(0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const cplx g1 = F.leg1.eval(std::exp(t[i]) * p,
                                  std::exp(-t[i]) * q + t[j], r);
      s1_00 += smooth[i] * smooth[j] * g1;
      s1_w += deriv[i] * smooth[j] * g1;
      s1_q += smooth[i] * deriv[j] * g1;
    }
  // Leg 2 sums over (wtt, pt): F's second pair of arguments.
  cplx s2_00(0.0), s2_w(0.0), s2_p(0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const cplx g2 = F.leg2.eval(std::exp(t[i]) * pp + t[j],
                                  std::exp(-t[i]) * qp, rp);
      s2_00 += smooth[i] * smooth[j] * g2;
      s2_w += deriv[i] * smooth[j] * g2;
      s2_p += smooth[i] * deriv[j] * g2;
    }
  const double h4 = h * h * h * h;
  // h^2 per leg; prefactor terms pick one derivative kernel each.
  const cplx total = 2.0 * p * qp * (1.0 - ew) * s1_00 * s2_00 +
                     r * s1_00 * s2_w + rp * s1_w * s2_00 +
                     2.0 * r * qp * s1_q * s2_00 -
                     2.0 * rp * ew * p * s1_00 * s2_p;
  return total * h4 * wfac;
}

/// Regularized bracket oracle with the leading O(eps^2) smoothing bias
/// removed by Richardson extrapolation in the regularization width.
inline cplx psi_bracket_oracle(const ExtPairFunction& F,
                               const std::array<double, 8>& v,
                               double eps = 0.03) {
  const cplx coarse = psi_bracket_oracle_at(F, v, eps);
  const cplx fine = psi_bracket_oracle_at(F, v, 0.5 * eps);
  return (4.0 * fine - coarse) / 3.0;
}

/**
 * Monte-Carlo L1/L2 norm of the classical-limit defect
 *
 *   (Psi_lambda(F) - F) / lambda + 2 pi i [psi, F]
 *
 * over a fixed sampling box, with a deterministic stream.
 */
inline DefectNorms r_classical_limit_defect(const ExtPairFunction& F,
                                            double lambda,
                                            std::size_t samples,
                                            std::uint64_t seed) {
  SplitMix64 rng(seed);
  const double Bpq = 3.0, Brw = 1.5;
  double acc1 = 0.0, acc2 = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const std::array<double, 8> v{
        rng.uniform(-Bpq, Bpq), rng.uniform(-Bpq, Bpq),
        rng.uniform(-Brw, Brw), rng.uniform(-Brw, Brw),
        rng.uniform(-Bpq, Bpq), rng.uniform(-Bpq, Bpq),
        rng.uniform(-Brw, Brw), rng.uniform(-Brw, Brw)};
    const cplx d = (psi_conjugation(F, lambda, v) - F.eval(v)) / lambda +
                   cplx(0.0, kTwoPi) * psi_bracket(F, v);
    acc1 += std::abs(d);
    acc2 += std::norm(d);
  }
  const double volume = std::pow(2.0 * Bpq, 4) * std::pow(2.0 * Brw, 4);
  DefectNorms out;
  out.l1 = volume * acc1 / static_cast<double>(samples);
  out.l2 = std::sqrt(volume * acc2 / static_cast<double>(samples));
  return out;
}

namespace suite_detail {

/// CSV row formatting with fixed precision and no locale dependence.
inline std::string csv_row(double parameter, const DefectNorms& d,
                           double ratio) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g", parameter, d.l1,
                d.l2, ratio);
  return std::string(buf);
}

}  // namespace suite_detail

/// One emitted sweep table plus the worst successive defect ratio.
struct SweepTable {
  std::string csv;
  double worst_ratio = 0.0;
};

/// Monte-Carlo sweep of the R-conjugation defect over a list of lambda
/// values; each row records L1/L2 norms and the successive L1 ratio.
inline SweepTable lambda_sweep_table(const ExtPairFunction& F,
                                     const std::vector<double>& lambdas,
                                     std::size_t samples,
                                     std::uint64_t seed) {
  SweepTable out;
  out.csv = "parameter,defect_L1,defect_L2,ratio";
  double prev = 0.0;
  for (double lambda : lambdas) {
    const auto d = r_classical_limit_defect(F, lambda, samples, seed);
    const double ratio = prev > 0.0 ? d.l1 / prev : 0.0;
    if (prev > 0.0) out.worst_ratio = std::max(out.worst_ratio, ratio);
    out.csv += "\n" + suite_detail::csv_row(lambda, d, ratio);
    prev = d.l1;
  }
  return out;
}

/// Grid sweep of the semiclassical defect of the deformed product over a
/// list of hbar values, same row format as the lambda sweep.
inline SweepTable hbar_sweep_table(const ClosedFormFunction& phi_cf,
                                   const ClosedFormFunction& psi_cf,
                                   const ModelParams& params, const Grid& grid,
                                   const std::vector<double>& hbars) {
  SweepTable out;
  out.csv = "parameter,defect_L1,defect_L2,ratio";
  double prev = 0.0;
  for (double hbar : hbars) {
    ModelParams pp = params;
    pp.hbar = hbar;
    const auto d = semiclassical_defect(phi_cf, psi_cf, grid, pp);
    const double ratio = prev > 0.0 ? d.l1 / prev : 0.0;
    if (prev > 0.0) out.worst_ratio = std::max(out.worst_ratio, ratio);
    out.csv += "\n" + suite_detail::csv_row(hbar, d, ratio);
    prev = d.l1;
  }
  return out;
}

/// Deterministic test family for the sweeps, shared by the verification
/// suite and the sweep command so both emit the same tables.
struct SweepFamily {
  ExtPairFunction F;
  ClosedFormFunction phi_cf, psi_cf;
};

inline SweepFamily make_sweep_family(std::uint64_t seed) {
  SplitMix64 rng(seed ^ 0x11ULL);
  SweepFamily fam;
  fam.F.leg1 = suite_detail::random_cff_gauss_r(rng, 4.0);
  fam.F.leg2 = suite_detail::random_cff_gauss_r(rng, 4.0);
  fam.phi_cf = suite_detail::random_cff(rng);
  fam.psi_cf = suite_detail::random_cff(rng);
  return fam;
}

/// Classical-limit suite: dyadic sweeps of the semiclassical defect in hbar
/// and of the R-conjugation defect in lambda, with CSV artifacts.
inline SuiteReport suite_limits(const ModelParams& params, const Grid& grid,
                                std::uint64_t seed) {
  SuiteReport rep;
  rep.suite = "limits";
  rep.params = params;
  rep.grid = grid;
  rep.seed = seed;
  const SweepFamily fam = make_sweep_family(seed);
  const ExtPairFunction& F = fam.F;
  SplitMix64 rng(seed ^ 0x13ULL);

  // The conjugation at lambda = 0 is exactly the identity.
  {
    double worst = 0.0;
    for (int k = 0; k < 32; ++k) {
      std::array<double, 8> v;
      for (auto& x : v) x = rng.uniform(-2.0, 2.0);
      worst = std::max(worst,
                       std::abs(psi_conjugation(F, 0.0, v) - F.eval(v)));
    }
    rep.add("conjugation-at-zero", "Psi_0(F) = F", worst, 1e-12);
  }

  // Closed-form bracket reduction against the regularized quadrature.
  {
    double worst = 0.0;
    for (int k = 0; k < 8; ++k) {
      std::array<double, 8> v;
      for (auto& x : v) x = rng.uniform(-1.0, 1.0);
      const cplx closed = psi_bracket(F, v);
      const cplx oracle = psi_bracket_oracle(F, v);
      worst = std::max(worst, std::abs(closed - oracle) /
                                  std::max(1e-6, std::abs(closed)));
    }
    rep.add("bracket-oracle",
            "[psi, F] reduction = regularized defining integral", worst,
            1e-3);
  }

  // Lambda sweep: the first-order defect halves with lambda.
  {
    const auto table = lambda_sweep_table(F, {0.5, 0.25, 0.125, 0.0625},
                                          1000000, seed ^ 0x77ULL);
    rep.add("lambda-sweep",
            "|| (Psi_lambda(F) - F) / lambda + 2 pi i [psi, F] ||_L1 -> 0",
            table.worst_ratio, 0.7);
    rep.artifacts["lambda_sweep_csv"] = table.csv;
  }

  // Hbar sweep of the semiclassical defect of the deformed product.
  {
    const auto table = hbar_sweep_table(fam.phi_cf, fam.psi_cf, params, grid,
                                        {1.0, 0.5, 0.25, 0.125});
    rep.add("hbar-sweep",
            "|| (phi x psi - psi x phi) / hbar - (i / 2 pi) {phi, psi} || -> "
            "0",
            table.worst_ratio, 0.6);
    rep.artifacts["hbar_sweep_csv"] = table.csv;
  }

  // Commuting pair: functions of r alone multiply commutatively, so the
  // scaled commutator vanishes along with the bracket.
  {
    SampledFunction f1(grid, "pqr"), f2(grid, "pqr");
    for (std::size_t i = 0; i < grid.N[0]; ++i)
      for (std::size_t j = 0; j < grid.N[1]; ++j)
        for (std::size_t k = 0; k < grid.N[2]; ++k) {
          const double r = grid.point(2, k);
          f1.at(i, j, k) = bump01((r - 0.1) / 0.7);
          f2.at(i, j, k) = cplx(0.3, 0.8) * bump01((r + 0.15) / 0.6);
        }
    const auto ab = deformed_mul(f1, f2, params);
    const auto ba = deformed_mul(f2, f1, params);
    double l1 = 0.0;
    for (std::size_t m = 0; m < ab.v.size(); ++m)
      l1 += std::abs(ab.v[m] - ba.v[m]);
    l1 *= grid.spacing(0) * grid.spacing(1) * grid.spacing(2) / params.hbar;
    rep.add("commuting-pair",
            "phi, psi functions of r => [phi, psi] = 0 and {phi, psi} = 0",
            l1, 1e-10);
  }
  return rep;
}

}  // namespace qheis

#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "qheis/groups.hpp"
#include "qheis/params.hpp"

namespace qheis {

/**
 * Smooth real-valued functional on the dual group, with an optional analytic
 * gradient.  When no gradient is supplied, central finite differences with
 * step 1e-5 are used.
 */
struct SmoothFunctional {
  std::function<double(const GElement&)> value;
  // Gradient in the flattened order (p_1..p_n, q_1..q_n, r); optional.
  std::function<std::vector<double>(const GElement&)> gradient;

  static constexpr double kFdStep = 1e-5;

  std::vector<double> grad(const GElement& pt) const {
    if (gradient) return gradient(pt);
    if (!value)
      throw std::invalid_argument("SmoothFunctional: no value function");
    const std::size_t n = pt.p.size();
    std::vector<double> g(2 * n + 1);
    GElement lo = pt, hi = pt;
    for (std::size_t i = 0; i < n; ++i) {
      hi.p[i] += kFdStep;
      lo.p[i] -= kFdStep;
      g[i] = (value(hi) - value(lo)) / (2.0 * kFdStep);
      hi.p[i] = pt.p[i];
      lo.p[i] = pt.p[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      hi.q[i] += kFdStep;
      lo.q[i] -= kFdStep;
      g[n + i] = (value(hi) - value(lo)) / (2.0 * kFdStep);
      hi.q[i] = pt.q[i];
      lo.q[i] = pt.q[i];
    }
    hi.r += kFdStep;
    lo.r -= kFdStep;
    g[2 * n] = (value(hi) - value(lo)) / (2.0 * kFdStep);
    return g;
  }
};

/**
 * Poisson bracket on the dual group:
 *   {phi, psi}(p,q,r) = eta_lambda(r) * (beta(x, y') - beta(x', y)),
 * where dphi = (x, y, z) and dpsi = (x', y', z') are the gradients with
 * respect to (p, q, r).
 */
inline double poisson_bracket(const SmoothFunctional& phi,
                              const SmoothFunctional& psi, const GElement& pt,
                              const ModelParams& params) {
  const std::size_t n = pt.p.size();
  const auto dphi = phi.grad(pt);
  const auto dpsi = psi.grad(pt);
  double cross = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    cross += dphi[i] * dpsi[n + i] - dpsi[i] * dphi[n + i];
  return eta(params.lambda, pt.r) * cross;
}

/// |{{phi,psi},chi} + {{psi,chi},phi} + {{chi,phi},psi}| at pt, with nested
/// finite differences; contract: <= 1e-4 with the default step.
inline double jacobi_defect(const SmoothFunctional& phi,
                            const SmoothFunctional& psi,
                            const SmoothFunctional& chi, const GElement& pt,
                            const ModelParams& params) {
  auto bracket_functional = [&params](const SmoothFunctional& f,
                                      const SmoothFunctional& g) {
    return SmoothFunctional{
        [f, g, params](const GElement& x) {
          return poisson_bracket(f, g, x, params);
        },
        nullptr};
  };
  const auto pb_phi_psi = bracket_functional(phi, psi);
  const auto pb_psi_chi = bracket_functional(psi, chi);
  const auto pb_chi_phi = bracket_functional(chi, phi);
  const double total = poisson_bracket(pb_phi_psi, chi, pt, params) +
                       poisson_bracket(pb_psi_chi, phi, pt, params) +
                       poisson_bracket(pb_chi_phi, psi, pt, params);
  return std::abs(total);
}

}  // namespace qheis

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qheis {

/**
 * Model parameters shared by every module.
 *
 * n is the number of (x_i, y_i) coordinate pairs, lambda the deformation
 * constant of the group laws, hbar the scale entering the twisted cocycle
 * (the cocycle phase always uses hbar * eta_lambda(r)).  The phase
 * convention e(t) = exp(2*pi*i*t) is a global constant, never a parameter.
 */
struct ModelParams {
  std::size_t n = 1;
  double lambda = 1.0;
  double hbar = 1.0;

  /// Quantum-side constructions require lambda != 0 and n >= 1.
  void require_quantum() const {
    if (n < 1) throw std::invalid_argument("ModelParams: n must be >= 1");
    if (lambda == 0.0)
      throw std::invalid_argument(
          "ModelParams: lambda must be nonzero outside classical-limit paths");
  }
};

/// beta(x, y) = sum_i x_i y_i, the standard pairing on R^n.
inline double beta(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("beta: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

/// eta_lambda(r) = (exp(2*lambda*r) - 1) / (2*lambda), with eta_0(r) = r.
inline double eta(double lambda, double r) {
  if (lambda == 0.0) return r;
  return std::expm1(2.0 * lambda * r) / (2.0 * lambda);
}

/**
 * Defect of the scaling identity
 *   exp(-2*lambda*r') * (eta(r + r') - eta(r')) = eta(r).
 * Returns |LHS - RHS|; zero up to round-off for all real inputs.
 */
inline double eta_identity_defect(double lambda, double r, double rp) {
  const double lhs =
      std::exp(-2.0 * lambda * rp) * (eta(lambda, r + rp) - eta(lambda, rp));
  return std::abs(lhs - eta(lambda, r));
}

}  // namespace qheis

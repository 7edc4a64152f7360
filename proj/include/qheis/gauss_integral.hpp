#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qheis/common.hpp"

namespace qheis {

/**
 * Complex quadratic exponent over m real variables:
 *
 *   exp(-v^T A v + b^T v) * c0,   A symmetric, Re A positive definite.
 *
 * Supports analytic integration over trailing variables by iterated 1D
 * Gaussian reduction (Schur complements), one variable at a time:
 * int exp(-a t^2 + beta t) dt = sqrt(pi / a) exp(beta^2 / 4a), principal
 * square root, requiring Re a > 0.
 */
struct QuadForm {
  std::size_t m = 0;
  std::vector<cplx> A;  // m x m, row-major, symmetric
  std::vector<cplx> b;  // m
  cplx c0{1.0};

  explicit QuadForm(std::size_t vars = 0)
      : m(vars), A(vars * vars, cplx(0.0)), b(vars, cplx(0.0)) {}

  cplx& a(std::size_t i, std::size_t j) { return A[i * m + j]; }
  cplx a(std::size_t i, std::size_t j) const { return A[i * m + j]; }

  /// Add s * v_i * v_j to the quadratic part (symmetrically).
  void add_quad(std::size_t i, std::size_t j, cplx s) {
    if (i == j) {
      a(i, i) += s;
    } else {
      a(i, j) += 0.5 * s;
      a(j, i) += 0.5 * s;
    }
  }

  cplx eval(const std::vector<double>& v) const {
    cplx q(0.0);
    for (std::size_t i = 0; i < m; ++i) {
      cplx row(0.0);
      for (std::size_t j = 0; j < m; ++j) row += a(i, j) * v[j];
      q += v[i] * (b[i] - row);
    }
    return c0 * std::exp(q);
  }

  /// Integrate out the last variable analytically.
  void integrate_last() {
    if (m == 0) throw std::logic_error("QuadForm: no variable to integrate");
    const std::size_t k = m - 1;
    const cplx akk = a(k, k);
    if (!(akk.real() > 0.0))
      throw std::domain_error("QuadForm: divergent Gaussian integral");
    QuadForm out(k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j)
        out.a(i, j) = a(i, j) - a(i, k) * a(k, j) / akk;
      out.b[i] = b[i] - b[k] * a(i, k) / akk;
    }
    out.c0 = c0 * std::sqrt(std::numbers::pi / akk) *
             std::exp(b[k] * b[k] / (4.0 * akk));
    *this = std::move(out);
  }

  /// Integrate out the trailing `count` variables.
  void integrate_trailing(std::size_t count) {
    for (std::size_t t = 0; t < count; ++t) integrate_last();
  }
};

}  // namespace qheis

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "qheis/common.hpp"
#include "qheis/grid.hpp"

namespace qheis {

/// Smooth compactly supported bump: exp(1 - 1/(1 - t^2)) on |t| < 1, else 0.
inline double bump01(double t) {
  const double t2 = t * t;
  if (t2 >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - t2));
}

/// Small dense bivariate polynomial with complex coefficients.
struct Poly2 {
  // coeff[i][j] multiplies u^i v^j; ragged rows allowed.
  std::vector<std::vector<cplx>> coeff{{cplx(1.0)}};

  cplx eval(double u, double v) const {
    cplx s(0.0);
    double ui = 1.0;
    for (std::size_t i = 0; i < coeff.size(); ++i) {
      double vj = 1.0;
      cplx row(0.0);
      for (std::size_t j = 0; j < coeff[i].size(); ++j) {
        row += coeff[i][j] * vj;
        vj *= v;
      }
      s += row * ui;
      ui *= u;
    }
    return s;
  }

  static Poly2 zero() { return Poly2{{{cplx(0.0)}}}; }

  Poly2 scaled(cplx c) const {
    Poly2 out = *this;
    for (auto& row : out.coeff)
      for (auto& e : row) e *= c;
    return out;
  }

  friend Poly2 operator+(const Poly2& a, const Poly2& b) {
    Poly2 out;
    out.coeff.assign(std::max(a.coeff.size(), b.coeff.size()), {});
    for (std::size_t i = 0; i < out.coeff.size(); ++i) {
      const std::size_t cols =
          std::max(i < a.coeff.size() ? a.coeff[i].size() : 0,
                   i < b.coeff.size() ? b.coeff[i].size() : 0);
      out.coeff[i].assign(cols, cplx(0.0));
      for (std::size_t j = 0; j < cols; ++j) {
        if (i < a.coeff.size() && j < a.coeff[i].size())
          out.coeff[i][j] += a.coeff[i][j];
        if (i < b.coeff.size() && j < b.coeff[i].size())
          out.coeff[i][j] += b.coeff[i][j];
      }
    }
    return out;
  }

  /// Multiply by the affine factor (c0 + cu * u + cv * v).
  Poly2 times_affine(cplx c0, cplx cu, cplx cv) const {
    Poly2 out;
    out.coeff.assign(coeff.size() + 1, {});
    for (auto& row : out.coeff) row.assign(max_cols() + 2, cplx(0.0));
    for (std::size_t i = 0; i < coeff.size(); ++i)
      for (std::size_t j = 0; j < coeff[i].size(); ++j) {
        out.coeff[i][j] += c0 * coeff[i][j];
        out.coeff[i + 1][j] += cu * coeff[i][j];
        out.coeff[i][j + 1] += cv * coeff[i][j];
      }
    return out;
  }

  Poly2 d_du() const {
    Poly2 out = zero();
    if (coeff.size() < 2) return out;
    out.coeff.assign(coeff.size() - 1, {});
    for (std::size_t i = 1; i < coeff.size(); ++i) {
      out.coeff[i - 1].assign(coeff[i].size(), cplx(0.0));
      for (std::size_t j = 0; j < coeff[i].size(); ++j)
        out.coeff[i - 1][j] = static_cast<double>(i) * coeff[i][j];
    }
    return out;
  }

  Poly2 d_dv() const {
    Poly2 out;
    out.coeff.assign(coeff.size(), {});
    bool any = false;
    for (std::size_t i = 0; i < coeff.size(); ++i) {
      if (coeff[i].size() >= 2) {
        out.coeff[i].assign(coeff[i].size() - 1, cplx(0.0));
        for (std::size_t j = 1; j < coeff[i].size(); ++j)
          out.coeff[i][j - 1] = static_cast<double>(j) * coeff[i][j];
        any = true;
      } else {
        out.coeff[i].assign(1, cplx(0.0));
      }
    }
    if (!any) return zero();
    return out;
  }

 private:
  std::size_t max_cols() const {
    std::size_t m = 0;
    for (const auto& row : coeff) m = std::max(m, row.size());
    return m;
  }
};

/**
 * Analytic member of the dense function algebra:
 *
 *   f(u, v, r) = amp * P(u, v)
 *              * exp(-a_u (u - u0)^2 + 2 pi i f_u u)
 *              * exp(-a_v (v - v0)^2 + 2 pi i f_v v)
 *              * bump((r - r0) / rho)
 *
 * with Re a_u, Re a_v > 0 and a smooth compactly supported bump in r.
 * Evaluable at arbitrary real points; closed under d/du and d/dv.
 */
struct ClosedFormFunction {
  cplx amp{1.0};
  Poly2 poly{};
  cplx a_u{1.0}, a_v{1.0};
  double u0 = 0.0, v0 = 0.0;
  double f_u = 0.0, f_v = 0.0;
  double r0 = 0.0, rho = 1.0;
  // Optional Gaussian r-profile exp(-a_r (r - r0)^2) instead of the bump;
  // used where spectral accuracy of r-quadratures matters.
  bool gaussian_r = false;
  double a_r = 1.0;

  double r_profile(double r) const {
    if (gaussian_r) return std::exp(-a_r * (r - r0) * (r - r0));
    return bump01((r - r0) / rho);
  }

  cplx eval(double u, double v, double r) const {
    const double br = r_profile(r);
    if (br == 0.0) return cplx(0.0);
    const double du = u - u0, dv = v - v0;
    const cplx expo =
        -a_u * (du * du) - a_v * (dv * dv) + cplx(0.0, kTwoPi * (f_u * u + f_v * v));
    return amp * poly.eval(u, v) * std::exp(expo) * br;
  }

  /// Analytic partial derivative with respect to the first fast coordinate.
  ClosedFormFunction d_du() const {
    ClosedFormFunction out = *this;
    // (P' + P * (-2 a_u (u - u0) + 2 pi i f_u)) replaces P.
    out.poly = poly.d_du() +
               poly.times_affine(2.0 * a_u * u0 + cplx(0.0, kTwoPi * f_u),
                                 -2.0 * a_u, cplx(0.0));
    return out;
  }

  /// Analytic partial derivative with respect to the second fast coordinate.
  ClosedFormFunction d_dv() const {
    ClosedFormFunction out = *this;
    out.poly = poly.d_dv() +
               poly.times_affine(2.0 * a_v * v0 + cplx(0.0, kTwoPi * f_v),
                                 cplx(0.0), -2.0 * a_v);
    return out;
  }

  SampledFunction sample(const Grid& grid, const std::string& picture) const {
    SampledFunction f(grid, picture);
    for (std::size_t i = 0; i < grid.N[0]; ++i)
      for (std::size_t j = 0; j < grid.N[1]; ++j)
        for (std::size_t k = 0; k < grid.N[2]; ++k)
          f.at(i, j, k) =
              eval(grid.point(0, i), grid.point(1, j), grid.point(2, k));
    return f;
  }
};

}  // namespace qheis

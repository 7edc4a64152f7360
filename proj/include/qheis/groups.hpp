#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qheis/params.hpp"

namespace qheis {

/// Element of the Heisenberg group: (x, y, z) in R^n x R^n x R.
struct HeisElement {
  std::vector<double> x;
  std::vector<double> y;
  double z = 0.0;

  static HeisElement identity(std::size_t n) {
    return {std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), 0.0};
  }
};

/// Element of the dual group: (p, q, r) in R^n x R^n x R.
struct GElement {
  std::vector<double> p;
  std::vector<double> q;
  double r = 0.0;

  static GElement identity(std::size_t n) {
    return {std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), 0.0};
  }
};

/// Extended Heisenberg element: (x, y, z, w) with an extra scaling coordinate.
struct ExtHeisElement {
  std::vector<double> x;
  std::vector<double> y;
  double z = 0.0;
  double w = 0.0;

  static ExtHeisElement identity(std::size_t n) {
    return {std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), 0.0, 0.0};
  }
};

/// Extended dual element: (p, q, r, s) with an extra additive coordinate.
struct ExtGElement {
  std::vector<double> p;
  std::vector<double> q;
  double r = 0.0;
  double s = 0.0;

  static ExtGElement identity(std::size_t n) {
    return {std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), 0.0, 0.0};
  }
};

namespace detail {

inline void require_same_n(std::size_t a, std::size_t b, const char* who) {
  if (a != b) throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

inline std::vector<double> add(const std::vector<double>& a,
                               const std::vector<double>& b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline std::vector<double> axpy(double c, const std::vector<double>& a,
                                const std::vector<double>& b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = c * a[i] + b[i];
  return out;
}

inline std::vector<double> scale(double c, const std::vector<double>& a) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = c * a[i];
  return out;
}

}  // namespace detail

/// (x,y,z)(x',y',z') = (x+x', y+y', z+z'+beta(x,y')).
inline HeisElement heis_mul(const HeisElement& a, const HeisElement& b) {
  detail::require_same_n(a.x.size(), b.x.size(), "heis_mul");
  return {detail::add(a.x, b.x), detail::add(a.y, b.y),
          a.z + b.z + beta(a.x, b.y)};
}

/// Inverse for heis_mul: validated as a two-sided inverse by the tests.
inline HeisElement heis_inv(const HeisElement& a) {
  return {detail::scale(-1.0, a.x), detail::scale(-1.0, a.y),
          -a.z + beta(a.x, a.y)};
}

/// (p,q,r)(p',q',r') = (e^{lambda r'} p + p', e^{lambda r'} q + q', r + r').
inline GElement g_mul(const GElement& a, const GElement& b, double lambda) {
  detail::require_same_n(a.p.size(), b.p.size(), "g_mul");
  const double c = std::exp(lambda * b.r);
  return {detail::axpy(c, a.p, b.p), detail::axpy(c, a.q, b.q), a.r + b.r};
}

/// The unique h with g_mul(a, h) = identity.
inline GElement g_inv(const GElement& a, double lambda) {
  const double c = std::exp(-lambda * a.r);
  return {detail::scale(-c, a.p), detail::scale(-c, a.q), -a.r};
}

/// (x,y,z,w)(x',y',z',w') = (x+e^w x', y+e^{-w} y', z+z'+e^{-w} beta(x,y'), w+w').
inline ExtHeisElement ext_heis_mul(const ExtHeisElement& a,
                                   const ExtHeisElement& b) {
  detail::require_same_n(a.x.size(), b.x.size(), "ext_heis_mul");
  const double ew = std::exp(a.w);
  const double emw = std::exp(-a.w);
  std::vector<double> x(a.x.size()), y(a.y.size());
  for (std::size_t i = 0; i < a.x.size(); ++i) {
    x[i] = a.x[i] + ew * b.x[i];
    y[i] = a.y[i] + emw * b.y[i];
  }
  return {std::move(x), std::move(y), a.z + b.z + emw * beta(a.x, b.y),
          a.w + b.w};
}

/// Inverse for ext_heis_mul, validated by the tests.
inline ExtHeisElement ext_heis_inv(const ExtHeisElement& a) {
  const double emw = std::exp(-a.w);
  const double ew = std::exp(a.w);
  std::vector<double> x(a.x.size()), y(a.y.size());
  for (std::size_t i = 0; i < a.x.size(); ++i) {
    x[i] = -emw * a.x[i];
    y[i] = -ew * a.y[i];
  }
  return {std::move(x), std::move(y), -a.z + beta(a.x, a.y), -a.w};
}

/// (p,q,r,s)(p',q',r',s') = (e^{lambda r'} p + p', e^{lambda r'} q + q', r+r', s+s').
inline ExtGElement ext_g_mul(const ExtGElement& a, const ExtGElement& b,
                             double lambda) {
  detail::require_same_n(a.p.size(), b.p.size(), "ext_g_mul");
  const double c = std::exp(lambda * b.r);
  return {detail::axpy(c, a.p, b.p), detail::axpy(c, a.q, b.q), a.r + b.r,
          a.s + b.s};
}

/// Inverse for ext_g_mul.
inline ExtGElement ext_g_inv(const ExtGElement& a, double lambda) {
  const double c = std::exp(lambda * a.r);
  return {detail::scale(-1.0 / c, a.p), detail::scale(-1.0 / c, a.q), -a.r,
          -a.s};
}

}  // namespace qheis

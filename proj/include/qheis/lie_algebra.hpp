#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qheis/rational.hpp"

namespace qheis {

/**
 * Finite-dimensional Lie algebra given by an ordered basis and exact
 * structure constants c_{ij}^k (polynomials in the symbolic constant
 * lambda).  Antisymmetry and the Jacobi identity are validated exactly at
 * construction time.
 */
struct LieAlgebraSpec {
  std::string name;
  std::vector<std::string> labels;
  std::size_t dim = 0;
  std::vector<LambdaPoly> c;  // flattened [i][j][k]

  LieAlgebraSpec(std::string name_, std::vector<std::string> labels_,
                 std::vector<LambdaPoly> constants)
      : name(std::move(name_)),
        labels(std::move(labels_)),
        dim(labels.size()),
        c(std::move(constants)) {
    if (c.size() != dim * dim * dim)
      throw std::invalid_argument("LieAlgebraSpec: constants size mismatch");
    validate();
  }

  const LambdaPoly& cc(std::size_t i, std::size_t j, std::size_t k) const {
    return c[(i * dim + j) * dim + k];
  }

 private:
  void validate() const {
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t k = 0; k < dim; ++k)
          if (!(cc(i, j, k) + cc(j, i, k)).is_zero())
            throw std::invalid_argument("LieAlgebraSpec: not antisymmetric");
    // Jacobi: sum_m c_ij^m c_mk^l + c_jk^m c_mi^l + c_ki^m c_mj^l = 0.
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t k = 0; k < dim; ++k)
          for (std::size_t l = 0; l < dim; ++l) {
            LambdaPoly s;
            for (std::size_t m = 0; m < dim; ++m)
              s = s + cc(i, j, m) * cc(m, k, l) + cc(j, k, m) * cc(m, i, l) +
                  cc(k, i, m) * cc(m, j, l);
            if (!s.is_zero())
              throw std::invalid_argument("LieAlgebraSpec: Jacobi fails");
          }
  }
};

namespace lie {

/// Helper to build constants arrays: set [e_i, e_j] += v * e_k (and the
/// antisymmetric partner automatically).
struct ConstantsBuilder {
  std::size_t dim;
  std::vector<LambdaPoly> c;

  explicit ConstantsBuilder(std::size_t d) : dim(d), c(d * d * d) {}

  void set(std::size_t i, std::size_t j, std::size_t k, LambdaPoly v) {
    c[(i * dim + j) * dim + k] = c[(i * dim + j) * dim + k] + v;
    c[(j * dim + i) * dim + k] = c[(j * dim + i) * dim + k] - v;
  }
};

/// Basis ordering for the (extended) Heisenberg algebras:
/// x_1..x_n, y_1..y_n, z [, d].
inline std::size_t idx_x(std::size_t n, std::size_t i) { (void)n; return i; }
inline std::size_t idx_y(std::size_t n, std::size_t i) { return n + i; }
inline std::size_t idx_z(std::size_t n) { return 2 * n; }
inline std::size_t idx_d(std::size_t n) { return 2 * n + 1; }

/// Basis ordering for the dual algebras: p_1..p_n, q_1..q_n, r [, s].
inline std::size_t idx_p(std::size_t n, std::size_t i) { (void)n; return i; }
inline std::size_t idx_q(std::size_t n, std::size_t i) { return n + i; }
inline std::size_t idx_r(std::size_t n) { return 2 * n; }
inline std::size_t idx_s(std::size_t n) { return 2 * n + 1; }

inline std::vector<std::string> pair_labels(std::size_t n, const char* a,
                                            const char* b, const char* tail1,
                                            const char* tail2) {
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= n; ++i)
    labels.push_back(std::string(a) + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i)
    labels.push_back(std::string(b) + std::to_string(i));
  labels.push_back(tail1);
  if (tail2) labels.push_back(tail2);
  return labels;
}

/// Heisenberg algebra: [x_i, y_j] = delta_ij z, z central.
inline LieAlgebraSpec heisenberg(std::size_t n) {
  const std::size_t dim = 2 * n + 1;
  ConstantsBuilder b(dim);
  for (std::size_t i = 0; i < n; ++i)
    b.set(idx_x(n, i), idx_y(n, i), idx_z(n), LambdaPoly(1));
  return {"heisenberg", pair_labels(n, "x", "y", "z", nullptr),
          std::move(b.c)};
}

/// Extended Heisenberg algebra: adds d with [d, x_i] = x_i, [d, y_i] = -y_i.
inline LieAlgebraSpec ext_heisenberg(std::size_t n) {
  const std::size_t dim = 2 * n + 2;
  ConstantsBuilder b(dim);
  for (std::size_t i = 0; i < n; ++i) {
    b.set(idx_x(n, i), idx_y(n, i), idx_z(n), LambdaPoly(1));
    b.set(idx_d(n), idx_x(n, i), idx_x(n, i), LambdaPoly(1));
    b.set(idx_d(n), idx_y(n, i), idx_y(n, i), LambdaPoly(-1));
  }
  return {"ext_heisenberg", pair_labels(n, "x", "y", "z", "d"),
          std::move(b.c)};
}

/// Dual algebra: [p_i, q_j] = 0, [p_i, r] = lambda p_i, [q_i, r] = lambda q_i.
inline LieAlgebraSpec dual_g(std::size_t n) {
  const std::size_t dim = 2 * n + 1;
  ConstantsBuilder b(dim);
  for (std::size_t i = 0; i < n; ++i) {
    b.set(idx_p(n, i), idx_r(n), idx_p(n, i), LambdaPoly::term(Rational(1), 1));
    b.set(idx_q(n, i), idx_r(n), idx_q(n, i), LambdaPoly::term(Rational(1), 1));
  }
  return {"dual_g", pair_labels(n, "p", "q", "r", nullptr), std::move(b.c)};
}

/// Extended dual algebra: adds a central element s.
inline LieAlgebraSpec ext_dual_g(std::size_t n) {
  const std::size_t dim = 2 * n + 2;
  ConstantsBuilder b(dim);
  for (std::size_t i = 0; i < n; ++i) {
    b.set(idx_p(n, i), idx_r(n), idx_p(n, i), LambdaPoly::term(Rational(1), 1));
    b.set(idx_q(n, i), idx_r(n), idx_q(n, i), LambdaPoly::term(Rational(1), 1));
  }
  return {"ext_dual_g", pair_labels(n, "p", "q", "r", "s"), std::move(b.c)};
}

}  // namespace lie

/**
 * Dense tensor of order 1..3 over the basis of a LieAlgebraSpec with exact
 * LambdaPoly entries.
 */
struct LieTensor {
  const LieAlgebraSpec* alg = nullptr;
  int order = 1;
  std::vector<LambdaPoly> a;

  LieTensor() = default;
  LieTensor(const LieAlgebraSpec& algebra, int ord)
      : alg(&algebra), order(ord) {
    std::size_t size = 1;
    for (int k = 0; k < ord; ++k) size *= algebra.dim;
    a.assign(size, LambdaPoly());
  }

  std::size_t dim() const { return alg->dim; }

  LambdaPoly& at(std::size_t i) { return a[i]; }
  LambdaPoly& at(std::size_t i, std::size_t j) { return a[i * dim() + j]; }
  LambdaPoly& at(std::size_t i, std::size_t j, std::size_t k) {
    return a[(i * dim() + j) * dim() + k];
  }
  const LambdaPoly& at(std::size_t i) const { return a[i]; }
  const LambdaPoly& at(std::size_t i, std::size_t j) const {
    return a[i * dim() + j];
  }
  const LambdaPoly& at(std::size_t i, std::size_t j, std::size_t k) const {
    return a[(i * dim() + j) * dim() + k];
  }

  bool is_zero() const {
    for (const auto& v : a)
      if (!v.is_zero()) return false;
    return true;
  }

  friend LieTensor operator+(const LieTensor& x, const LieTensor& y) {
    require_compatible(x, y);
    LieTensor out = x;
    for (std::size_t i = 0; i < out.a.size(); ++i)
      out.a[i] = out.a[i] + y.a[i];
    return out;
  }
  friend LieTensor operator-(const LieTensor& x, const LieTensor& y) {
    require_compatible(x, y);
    LieTensor out = x;
    for (std::size_t i = 0; i < out.a.size(); ++i)
      out.a[i] = out.a[i] - y.a[i];
    return out;
  }

  static void require_compatible(const LieTensor& x, const LieTensor& y) {
    if (x.alg != y.alg || x.order != y.order)
      throw std::invalid_argument("LieTensor: algebra or order mismatch");
  }
};

/// [X, Y] for order-1 tensors via the structure constants; exact.
inline LieTensor bracket(const LieTensor& X, const LieTensor& Y) {
  if (X.alg != Y.alg || X.order != 1 || Y.order != 1)
    throw std::invalid_argument("bracket: need order-1 tensors over one algebra");
  LieTensor out(*X.alg, 1);
  const std::size_t d = X.dim();
  for (std::size_t i = 0; i < d; ++i) {
    if (X.at(i).is_zero()) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (Y.at(j).is_zero()) continue;
      for (std::size_t k = 0; k < d; ++k) {
        const auto& cijk = X.alg->cc(i, j, k);
        if (!cijk.is_zero()) out.at(k) = out.at(k) + X.at(i) * Y.at(j) * cijk;
      }
    }
  }
  return out;
}

/// Classical r-matrix over the extended Heisenberg algebra:
/// r = lambda (z (x) d + d (x) z + 2 sum_i x_i (x) y_i).
inline LieTensor classical_r_matrix(const LieAlgebraSpec& ext_heis,
                                    std::size_t n) {
  if (ext_heis.dim != 2 * n + 2)
    throw std::invalid_argument("classical_r_matrix: dimension mismatch");
  LieTensor r(ext_heis, 2);
  const auto lam = LambdaPoly::term(Rational(1), 1);
  const auto two_lam = LambdaPoly::term(Rational(2), 1);
  r.at(lie::idx_z(n), lie::idx_d(n)) = lam;
  r.at(lie::idx_d(n), lie::idx_z(n)) = lam;
  for (std::size_t i = 0; i < n; ++i)
    r.at(lie::idx_x(n, i), lie::idx_y(n, i)) = two_lam;
  return r;
}

/// [r12, r13] + [r12, r23] + [r13, r23] as an exact order-3 tensor.
inline LieTensor cybe_defect(const LieTensor& r) {
  if (r.order != 2) throw std::invalid_argument("cybe_defect: need order 2");
  const std::size_t d = r.dim();
  LieTensor out(*r.alg, 3);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const auto& rij = r.at(i, j);
      if (rij.is_zero()) continue;
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
          const auto& rkl = r.at(k, l);
          if (rkl.is_zero()) continue;
          const auto prod = rij * rkl;
          // [r12, r13]: bracket in leg 1 -> c_{ik}^a e_a (x) e_j (x) e_l.
          for (std::size_t m = 0; m < d; ++m) {
            const auto& c1 = r.alg->cc(i, k, m);
            if (!c1.is_zero()) out.at(m, j, l) = out.at(m, j, l) + prod * c1;
            // [r12, r23]: bracket in leg 2 -> e_i (x) c_{jk}^b e_b (x) e_l.
            const auto& c2 = r.alg->cc(j, k, m);
            if (!c2.is_zero()) out.at(i, m, l) = out.at(i, m, l) + prod * c2;
            // [r13, r23]: bracket in leg 3 -> e_i (x) e_k (x) c_{jl}^c e_c.
            const auto& c3 = r.alg->cc(j, l, m);
            if (!c3.is_zero()) out.at(i, k, m) = out.at(i, k, m) + prod * c3;
          }
        }
    }
  return out;
}

/// (ad_X (x) id + id (x) ad_X)(t) for a basis element X = e_s.
inline LieTensor ad_action_two_leg(std::size_t s, const LieTensor& t) {
  if (t.order != 2) throw std::invalid_argument("ad_action_two_leg: order 2");
  const std::size_t d = t.dim();
  LieTensor out(*t.alg, 2);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const auto& tij = t.at(i, j);
      if (tij.is_zero()) continue;
      for (std::size_t m = 0; m < d; ++m) {
        const auto& c1 = t.alg->cc(s, i, m);
        if (!c1.is_zero()) out.at(m, j) = out.at(m, j) + tij * c1;
        const auto& c2 = t.alg->cc(s, j, m);
        if (!c2.is_zero()) out.at(i, m) = out.at(i, m) + tij * c2;
      }
    }
  return out;
}

/// t12 + t21 (transpose-symmetrization of a two-leg tensor).
inline LieTensor symmetrize_two_leg(const LieTensor& t) {
  if (t.order != 2) throw std::invalid_argument("symmetrize_two_leg: order 2");
  LieTensor out(*t.alg, 2);
  const std::size_t d = t.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      out.at(i, j) = t.at(i, j) + t.at(j, i);
  return out;
}

/// ad-invariance defects of a two-leg tensor for the listed basis elements.
inline std::vector<LieTensor> ad_invariance_defect(
    const LieTensor& t, const std::vector<std::size_t>& basis_indices) {
  std::vector<LieTensor> out;
  out.reserve(basis_indices.size());
  for (auto s : basis_indices) out.push_back(ad_action_two_leg(s, t));
  return out;
}

/// Cobracket delta(e_s) = ad_{e_s}(r).
inline LieTensor delta_cocycle(std::size_t s, const LieTensor& r) {
  return ad_action_two_leg(s, r);
}

/**
 * Reconstructs the dual-algebra bracket [mu, nu] from the cobracket by the
 * pairing <[mu,nu], X> = <mu (x) nu, delta(X)>.  mu, nu index the dual basis
 * (p_i, q_i, r), which pairs with (x_i, y_i, z) index-by-index; the result
 * is an order-1 tensor over the dual algebra.
 */
inline LieTensor dual_bracket_from_delta(std::size_t mu, std::size_t nu,
                                         const LieTensor& r_matrix,
                                         const LieAlgebraSpec& dual_alg,
                                         std::size_t n) {
  LieTensor out(dual_alg, 1);
  for (std::size_t k = 0; k < dual_alg.dim; ++k) {
    // Basis element of the primal algebra paired with dual index k.
    const LieTensor delta = delta_cocycle(k, r_matrix);
    out.at(k) = delta.at(mu, nu);
  }
  (void)n;
  return out;
}

/// theta on the dual basis: theta(r) = sum_i p_i ^ q_i, theta(p_i)=theta(q_i)=0.
inline LieTensor theta(std::size_t mu, const LieAlgebraSpec& dual_alg,
                       std::size_t n) {
  LieTensor out(dual_alg, 2);
  if (mu == lie::idx_r(n)) {
    for (std::size_t i = 0; i < n; ++i) {
      out.at(lie::idx_p(n, i), lie::idx_q(n, i)) = LambdaPoly(1);
      out.at(lie::idx_q(n, i), lie::idx_p(n, i)) = LambdaPoly(-1);
    }
  }
  return out;
}

/**
 * Numeric two-leg tensor over a Lie algebra basis (double entries) for the
 * group 1-cocycle F, whose coefficients involve exp(-2 lambda r).
 */
struct NumericTensor2 {
  const LieAlgebraSpec* alg = nullptr;
  std::vector<double> a;

  NumericTensor2() = default;
  explicit NumericTensor2(const LieAlgebraSpec& algebra)
      : alg(&algebra), a(algebra.dim * algebra.dim, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return a[i * alg->dim + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * alg->dim + j]; }
};

/// F(r) = ((1 - e^{-2 lambda r}) / (2 lambda)) sum_i p_i ^ q_i.
inline NumericTensor2 group_cocycle_F(double r_val, double lambda,
                                      const LieAlgebraSpec& dual_alg,
                                      std::size_t n) {
  if (lambda == 0.0)
    throw std::invalid_argument("group_cocycle_F: lambda must be nonzero");
  NumericTensor2 F(dual_alg);
  const double coeff = -std::expm1(-2.0 * lambda * r_val) / (2.0 * lambda);
  for (std::size_t i = 0; i < n; ++i) {
    F.at(lie::idx_p(n, i), lie::idx_q(n, i)) = coeff;
    F.at(lie::idx_q(n, i), lie::idx_p(n, i)) = -coeff;
  }
  return F;
}

/// Relative defect of F(r1 + r2) = F(r1) + e^{-2 lambda r1} F(r2).
inline double cocycle_F_defect(double r1, double r2, double lambda,
                               const LieAlgebraSpec& dual_alg, std::size_t n) {
  const auto Fsum = group_cocycle_F(r1 + r2, lambda, dual_alg, n);
  const auto F1 = group_cocycle_F(r1, lambda, dual_alg, n);
  const auto F2 = group_cocycle_F(r2, lambda, dual_alg, n);
  const double w = std::exp(-2.0 * lambda * r1);
  double defect = 0.0, scale = 1.0;
  for (std::size_t k = 0; k < Fsum.a.size(); ++k) {
    defect = std::max(defect, std::abs(Fsum.a[k] - F1.a[k] - w * F2.a[k]));
    scale = std::max({scale, std::abs(Fsum.a[k]), std::abs(w * F2.a[k])});
  }
  return defect / scale;
}

/// JSON serialization: basis labels plus exact numerator/denominator pairs.
inline nlohmann::json to_json(const LambdaPoly& p) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : p.coeffs) coeffs.push_back({c.num, c.den});
  return coeffs;
}

inline nlohmann::json to_json(const LieAlgebraSpec& alg) {
  nlohmann::json j;
  j["name"] = alg.name;
  j["labels"] = alg.labels;
  nlohmann::json constants = nlohmann::json::array();
  for (const auto& p : alg.c) constants.push_back(to_json(p));
  j["structure_constants"] = std::move(constants);
  return j;
}

inline nlohmann::json to_json(const LieTensor& t) {
  nlohmann::json j;
  j["algebra"] = t.alg->name;
  j["labels"] = t.alg->labels;
  j["order"] = t.order;
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& p : t.a) entries.push_back(to_json(p));
  j["entries"] = std::move(entries);
  return j;
}

}  // namespace qheis

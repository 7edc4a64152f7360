#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "qheis/common.hpp"
#include "qheis/coord_expr.hpp"

namespace qheis {

/**
 * Geometric operator of the shape
 *
 *   (A xi)(c) = amp(c) * ebar(phase(c)) * xi(S(c))          (linear), or
 *   (A xi)(c) = amp(c) * ebar(phase(c)) * conj xi(S(c))     (antilinear),
 *
 * where c is a flat real coordinate tuple, S is an invertible coordinate
 * substitution expressed in the CoordExpr grammar and amp is a positive
 * scalar factor.  The inverse substitution is carried alongside, so the
 * class is closed under composition, inversion and (for unitaries) the
 * adjoint, all computed symbolically.
 */
struct AffinePhaseOp {
  std::size_t dim = 0;
  std::vector<CoordExpr> subst;      // S
  std::vector<CoordExpr> subst_inv;  // S^{-1}
  CoordExpr amp = CoordExpr::constant(1.0);
  CoordExpr phase = CoordExpr::constant(0.0);
  bool antilinear = false;

  static AffinePhaseOp identity(std::size_t d) {
    AffinePhaseOp op;
    op.dim = d;
    op.subst.reserve(d);
    op.subst_inv.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
      op.subst.push_back(CoordExpr::coord(i));
      op.subst_inv.push_back(CoordExpr::coord(i));
    }
    return op;
  }

  std::vector<double> map_coords(const std::vector<double>& c,
                                 double lam) const {
    std::vector<double> out(dim);
    for (std::size_t i = 0; i < dim; ++i) out[i] = subst[i].eval(c, lam);
    return out;
  }

  std::vector<double> map_coords_inv(const std::vector<double>& c,
                                     double lam) const {
    std::vector<double> out(dim);
    for (std::size_t i = 0; i < dim; ++i) out[i] = subst_inv[i].eval(c, lam);
    return out;
  }

  /// Evaluate (A xi)(c) for a pointwise-evaluable vector xi.
  cplx apply(const std::function<cplx(const std::vector<double>&)>& xi,
             const std::vector<double>& c, double lam) const {
    cplx v = xi(map_coords(c, lam));
    if (antilinear) v = std::conj(v);
    return amp.eval(c, lam) * ebar(phase.eval(c, lam)) * v;
  }

  /// Operator product: (a * b) xi = a (b xi).
  friend AffinePhaseOp operator*(const AffinePhaseOp& a,
                                 const AffinePhaseOp& b) {
    if (a.dim != b.dim)
      throw std::invalid_argument("AffinePhaseOp: dimension mismatch");
    AffinePhaseOp out;
    out.dim = a.dim;
    out.subst.reserve(a.dim);
    out.subst_inv.reserve(a.dim);
    for (std::size_t i = 0; i < a.dim; ++i) {
      out.subst.push_back(b.subst[i].substituted(a.subst));
      out.subst_inv.push_back(a.subst_inv[i].substituted(b.subst_inv));
    }
    const CoordExpr b_phase_pulled = b.phase.substituted(a.subst);
    out.phase = a.antilinear ? (a.phase - b_phase_pulled)
                             : (a.phase + b_phase_pulled);
    out.amp = a.amp * b.amp.substituted(a.subst);
    out.antilinear = a.antilinear != b.antilinear;
    return out;
  }

  AffinePhaseOp inverse() const {
    AffinePhaseOp out;
    out.dim = dim;
    out.subst = subst_inv;
    out.subst_inv = subst;
    out.amp = CoordExpr::recip(amp).substituted(subst_inv);
    const CoordExpr pulled = phase.substituted(subst_inv);
    out.phase = antilinear ? pulled : -pulled;
    out.antilinear = antilinear;
    return out;
  }

  /// Adjoint of a unitary (amp equal to the Jacobian unitarity factor):
  /// coincides with the inverse.
  AffinePhaseOp adjoint() const {
    if (antilinear)
      throw std::invalid_argument("AffinePhaseOp: adjoint of antilinear op");
    return inverse();
  }

  /**
   * Embed an operator on a sub-tuple of coordinates into a larger tuple.
   * map[i] is the position of the operator's i-th coordinate in the target
   * tuple; all other target coordinates are left untouched.
   */
  AffinePhaseOp embed_legs(std::size_t target_dim,
                           const std::vector<std::size_t>& map) const {
    if (map.size() != dim)
      throw std::invalid_argument("AffinePhaseOp: embedding map size");
    AffinePhaseOp out = identity(target_dim);
    for (std::size_t i = 0; i < dim; ++i) {
      if (map[i] >= target_dim)
        throw std::out_of_range("AffinePhaseOp: embedding target index");
      out.subst[map[i]] = subst[i].remapped(map);
      out.subst_inv[map[i]] = subst_inv[i].remapped(map);
    }
    out.amp = amp.remapped(map);
    out.phase = phase.remapped(map);
    out.antilinear = antilinear;
    return out;
  }

  /// Full JSON descriptor (expression trees and leg signature), used for
  /// golden-file regression of the operator builders.
  nlohmann::json descriptor() const {
    nlohmann::json s = nlohmann::json::array();
    nlohmann::json si = nlohmann::json::array();
    for (const auto& e : subst) s.push_back(e.to_json());
    for (const auto& e : subst_inv) si.push_back(e.to_json());
    return {{"dim", dim},
            {"antilinear", antilinear},
            {"subst", std::move(s)},
            {"subst_inv", std::move(si)},
            {"amp", amp.to_json()},
            {"phase", phase.to_json()}};
  }
};

/// Outcome of randomized operator comparison: the worst component defect and
/// the coordinate tuple (with its lambda) where it occurred.
struct OpEquality {
  bool equal = false;
  double max_defect = 0.0;
  std::vector<double> witness;
  double witness_lambda = 1.0;
};

/**
 * Largest observed pointwise defect between two operators over random
 * coordinate tuples in [-1,1]^dim and random lambda in [-2,2]:
 * compares linearity type, substitution images, amplitudes, the phases as
 * unit complex numbers (absorbing integer shifts), and round-trip accuracy
 * of the carried inverses.
 */
inline OpEquality equal_randomized(const AffinePhaseOp& a,
                                   const AffinePhaseOp& b, int trials = 100,
                                   double tol = 1e-9,
                                   std::uint64_t seed = 7) {
  OpEquality res;
  if (a.dim != b.dim || a.antilinear != b.antilinear) {
    res.max_defect = 1.0;  // structurally different
    return res;
  }
  SplitMix64 rng(seed);
  std::vector<double> c(a.dim);
  for (int t = 0; t < trials; ++t) {
    for (auto& x : c) x = rng.uniform(-1.0, 1.0);
    double lam = rng.uniform(-2.0, 2.0);
    if (std::abs(lam) < 1e-3) lam = 1e-3;
    double worst = 0.0;
    const auto sa = a.map_coords(c, lam);
    const auto sb = b.map_coords(c, lam);
    for (std::size_t i = 0; i < a.dim; ++i)
      worst = std::max(worst, std::abs(sa[i] - sb[i]));
    worst = std::max(worst,
                     std::abs(a.amp.eval(c, lam) - b.amp.eval(c, lam)));
    worst = std::max(worst, std::abs(ebar(a.phase.eval(c, lam)) -
                                     ebar(b.phase.eval(c, lam))));
    const auto ra = a.map_coords_inv(sa, lam);
    const auto rb = b.map_coords_inv(sb, lam);
    for (std::size_t i = 0; i < a.dim; ++i) {
      worst = std::max(worst, std::abs(ra[i] - c[i]));
      worst = std::max(worst, std::abs(rb[i] - c[i]));
    }
    if (worst > res.max_defect) {
      res.max_defect = worst;
      res.witness = c;
      res.witness_lambda = lam;
    }
  }
  res.equal = res.max_defect < tol;
  return res;
}

/// Shorthand for the worst defect of equal_randomized.
inline double op_defect_randomized(const AffinePhaseOp& a,
                                   const AffinePhaseOp& b, int trials = 100,
                                   std::uint64_t seed = 7) {
  return equal_randomized(a, b, trials, 1e-9, seed).max_defect;
}

}  // namespace qheis

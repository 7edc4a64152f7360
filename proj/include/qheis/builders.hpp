#pragma once

#include "qheis/affine_op.hpp"
#include "qheis/coord_expr.hpp"

namespace qheis {

/**
 * Constructions of the concrete geometric operators (n = 1 throughout).
 *
 * Plain picture: a leg carries coordinates (x, y, r), so one-leg operators
 * have dim 3 and two-leg operators dim 6 with layout (x,y,r,x',y',r').
 * Extended picture: a leg carries (x, y, r, w), so two-leg operators have
 * dim 8 with layout (x,y,r,w,x',y',r',w').
 */
namespace ops {

inline CoordExpr C(double v) { return CoordExpr::constant(v); }
inline CoordExpr X(std::size_t i) { return CoordExpr::coord(i); }
inline CoordExpr Lam() { return CoordExpr::lambda(); }
inline CoordExpr ExpOf(CoordExpr e) { return CoordExpr::exp_of(std::move(e)); }
inline CoordExpr EtaOf(CoordExpr e) { return CoordExpr::eta_of(std::move(e)); }

/// Regular-representation building block:
/// (L_{a,b,c} xi)(x,y,r) = ebar(rc) ebar[eta(r) a (y - b)] xi(x-a, y-b, r).
inline AffinePhaseOp build_L(double a, double b, double c) {
  AffinePhaseOp op = AffinePhaseOp::identity(3);
  op.subst[0] = X(0) - C(a);
  op.subst[1] = X(1) - C(b);
  op.subst_inv[0] = X(0) + C(a);
  op.subst_inv[1] = X(1) + C(b);
  op.phase = X(2) * C(c) + EtaOf(X(2)) * C(a) * (X(1) - C(b));
  return op;
}

/// Untwisted leg coupling on two plain legs:
/// (V xi)(x,y,r,x',y',r') = xi(x, y, r+r', x'-x, y'-y, r').
inline AffinePhaseOp build_V() {
  AffinePhaseOp op = AffinePhaseOp::identity(6);
  op.subst[2] = X(2) + X(5);
  op.subst[3] = X(3) - X(0);
  op.subst[4] = X(4) - X(1);
  op.subst_inv[2] = X(2) - X(5);
  op.subst_inv[3] = X(3) + X(0);
  op.subst_inv[4] = X(4) + X(1);
  return op;
}

/// Cocycle-twisted leg coupling on two plain legs.
inline AffinePhaseOp build_V_sigma() {
  AffinePhaseOp op = AffinePhaseOp::identity(6);
  op.subst[2] = X(2) + X(5);
  op.subst[3] = X(3) - X(0);
  op.subst[4] = X(4) - X(1);
  op.subst_inv[2] = X(2) - X(5);
  op.subst_inv[3] = X(3) + X(0);
  op.subst_inv[4] = X(4) + X(1);
  op.phase = EtaOf(X(5)) * X(0) * (X(4) - X(1));
  return op;
}

/// Modular scaling of the first leg by the second leg's r'.
inline AffinePhaseOp build_W() {
  AffinePhaseOp op = AffinePhaseOp::identity(6);
  const CoordExpr down = ExpOf(-(Lam() * X(5)));
  const CoordExpr up = ExpOf(Lam() * X(5));
  op.subst[0] = down * X(0);
  op.subst[1] = down * X(1);
  op.subst_inv[0] = up * X(0);
  op.subst_inv[1] = up * X(1);
  op.amp = down;
  return op;
}

/// Multiplicative unitary U = W V_sigma on two plain legs.
inline AffinePhaseOp build_U() { return build_W() * build_V_sigma(); }

/// Antiunitary involution T xi(x,y,r) = e^{lambda r} conj xi(e^{lambda r} x,
/// e^{lambda r} y, -r); its own inverse.
inline AffinePhaseOp build_T() {
  AffinePhaseOp op = AffinePhaseOp::identity(3);
  const CoordExpr up = ExpOf(Lam() * X(2));
  op.subst[0] = up * X(0);
  op.subst[1] = up * X(1);
  op.subst[2] = -X(2);
  op.subst_inv = op.subst;
  op.amp = up;
  op.antilinear = true;
  return op;
}

/// Coproduct of the building block, transcribed directly as a two-leg
/// operator (to be checked against U (L x 1) U*).
inline AffinePhaseOp build_DeltaL(double a, double b, double c) {
  AffinePhaseOp op = AffinePhaseOp::identity(6);
  const CoordExpr up = ExpOf(Lam() * X(5));
  const CoordExpr down = ExpOf(-(Lam() * X(5)));
  op.subst[0] = X(0) - up * C(a);
  op.subst[1] = X(1) - up * C(b);
  op.subst[3] = X(3) - C(a);
  op.subst[4] = X(4) - C(b);
  op.subst_inv[0] = X(0) + up * C(a);
  op.subst_inv[1] = X(1) + up * C(b);
  op.subst_inv[3] = X(3) + C(a);
  op.subst_inv[4] = X(4) + C(b);
  op.phase = EtaOf(X(2) + X(5)) * C(a) * (down * X(1) - C(b)) +
             EtaOf(X(5)) * C(a) * (X(4) - down * X(1)) +
             (X(2) + X(5)) * C(c);
  return op;
}

/// Extended building block on one (x,y,r,w) leg.
inline AffinePhaseOp build_L_ext(double a, double b, double c, double d) {
  AffinePhaseOp op = AffinePhaseOp::identity(4);
  const double ed = std::exp(d), emd = std::exp(-d);
  op.subst[0] = C(emd) * X(0) - C(emd * a);
  op.subst[1] = C(ed) * X(1) - C(ed * b);
  op.subst[3] = X(3) - C(d);
  op.subst_inv[0] = C(ed) * X(0) + C(a);
  op.subst_inv[1] = C(emd) * X(1) + C(b);
  op.subst_inv[3] = X(3) + C(d);
  op.phase = X(2) * C(c) + EtaOf(X(2)) * C(a) * (X(1) - C(b));
  return op;
}

/// Extended modular scaling (first leg scaled by the second leg's r').
inline AffinePhaseOp build_W_ext() {
  AffinePhaseOp op = AffinePhaseOp::identity(8);
  const CoordExpr down = ExpOf(-(Lam() * X(6)));
  const CoordExpr up = ExpOf(Lam() * X(6));
  op.subst[0] = down * X(0);
  op.subst[1] = down * X(1);
  op.subst_inv[0] = up * X(0);
  op.subst_inv[1] = up * X(1);
  op.amp = down;
  return op;
}

/// Extended cocycle-twisted coupling; the w variable enters the second leg's
/// displacement through the conjugating exponentials.
inline AffinePhaseOp build_V_sigma_ext() {
  AffinePhaseOp op = AffinePhaseOp::identity(8);
  const CoordExpr emw = ExpOf(-X(3));
  const CoordExpr epw = ExpOf(X(3));
  op.subst[2] = X(2) + X(6);
  op.subst[4] = emw * X(4) - emw * X(0);
  op.subst[5] = epw * X(5) - epw * X(1);
  op.subst[7] = X(7) - X(3);
  op.subst_inv[2] = X(2) - X(6);
  op.subst_inv[4] = epw * X(4) + X(0);
  op.subst_inv[5] = emw * X(5) + X(1);
  op.subst_inv[7] = X(7) + X(3);
  op.phase = EtaOf(X(6)) * X(0) * (X(5) - X(1));
  return op;
}

/// Extended multiplicative unitary.
inline AffinePhaseOp build_U_ext() {
  return build_W_ext() * build_V_sigma_ext();
}

/// Extended coproduct of the building block, transcribed directly.
inline AffinePhaseOp build_DeltaL_ext(double a, double b, double c, double d) {
  AffinePhaseOp op = AffinePhaseOp::identity(8);
  const double ed = std::exp(d), emd = std::exp(-d);
  const CoordExpr uprp = ExpOf(Lam() * X(6));  // e^{lambda r'}
  op.subst[0] = C(emd) * X(0) - C(emd * a) * uprp;
  op.subst[1] = C(ed) * X(1) - C(ed * b) * uprp;
  op.subst[3] = X(3) - C(d);
  op.subst[4] = C(emd) * X(4) - C(emd * a);
  op.subst[5] = C(ed) * X(5) - C(ed * b);
  op.subst[7] = X(7) - C(d);
  op.subst_inv[0] = C(ed) * X(0) + C(a) * uprp;
  op.subst_inv[1] = C(emd) * X(1) + C(b) * uprp;
  op.subst_inv[3] = X(3) + C(d);
  op.subst_inv[4] = C(ed) * X(4) + C(a);
  op.subst_inv[5] = C(emd) * X(5) + C(b);
  op.subst_inv[7] = X(7) + C(d);
  op.phase = EtaOf(X(2)) * uprp * C(a) * (X(1) - uprp * C(b)) +
             EtaOf(X(6)) * C(a) * (X(5) - C(b)) + (X(2) + X(6)) * C(c);
  return op;
}

/// Opposite extended coproduct of the building block: the closed form that
/// conjugating the coproduct by the universal R operator must reproduce.
inline AffinePhaseOp build_DeltaOpL_ext(double a, double b, double c,
                                        double d) {
  AffinePhaseOp op = AffinePhaseOp::identity(8);
  const double ed = std::exp(d), emd = std::exp(-d);
  const CoordExpr upr = ExpOf(Lam() * X(2));  // e^{lambda r}
  op.subst[0] = C(emd) * X(0) - C(emd * a);
  op.subst[1] = C(ed) * X(1) - C(ed * b);
  op.subst[3] = X(3) - C(d);
  op.subst[4] = C(emd) * X(4) - C(emd * a) * upr;
  op.subst[5] = C(ed) * X(5) - C(ed * b) * upr;
  op.subst[7] = X(7) - C(d);
  op.subst_inv[0] = C(ed) * X(0) + C(a);
  op.subst_inv[1] = C(emd) * X(1) + C(b);
  op.subst_inv[3] = X(3) + C(d);
  op.subst_inv[4] = C(ed) * X(4) + C(a) * upr;
  op.subst_inv[5] = C(emd) * X(5) + C(b) * upr;
  op.subst_inv[7] = X(7) + C(d);
  op.phase = EtaOf(X(2)) * C(a) * (X(1) - C(b)) +
             EtaOf(X(6)) * upr * C(a) * (X(5) - upr * C(b)) +
             (X(2) + X(6)) * C(c);
  return op;
}

/// Point-transformation factor of the universal R operator (the remaining
/// factor is the quadratic-kernel operator built elsewhere).
inline AffinePhaseOp build_Phi() {
  AffinePhaseOp op = AffinePhaseOp::identity(8);
  const CoordExpr uprp = ExpOf(Lam() * X(6)), dnrp = ExpOf(-(Lam() * X(6)));
  const CoordExpr upr = ExpOf(Lam() * X(2)), dnr = ExpOf(-(Lam() * X(2)));
  op.subst[0] = dnrp * X(0);
  op.subst[1] = uprp * X(1);
  op.subst[3] = X(3) - Lam() * X(6);
  op.subst[4] = dnr * X(4);
  op.subst[5] = upr * X(5);
  op.subst[7] = X(7) - Lam() * X(2);
  op.subst_inv[0] = uprp * X(0);
  op.subst_inv[1] = dnrp * X(1);
  op.subst_inv[3] = X(3) + Lam() * X(6);
  op.subst_inv[4] = upr * X(4);
  op.subst_inv[5] = dnr * X(5);
  op.subst_inv[7] = X(7) + Lam() * X(2);
  return op;
}

/**
 * Multiplier actions of the two factors of the universal R element on the
 * function picture.  Layout (p,q,r,s,p',q',r',s') for the s-picture actions
 * and (p,q,r,w,p',q',r',w') for the right action of the quadratic factor.
 */
inline AffinePhaseOp build_mult_Phi_left() {
  AffinePhaseOp op = AffinePhaseOp::identity(8);
  const CoordExpr uprp = ExpOf(Lam() * X(6)), dnrp = ExpOf(-(Lam() * X(6)));
  const CoordExpr upr = ExpOf(Lam() * X(2)), dnr = ExpOf(-(Lam() * X(2)));
  op.subst[0] = uprp * X(0);
  op.subst[1] = dnrp * X(1);
  op.subst[4] = upr * X(4);
  op.subst[5] = dnr * X(5);
  op.subst_inv[0] = dnrp * X(0);
  op.subst_inv[1] = uprp * X(1);
  op.subst_inv[4] = dnr * X(4);
  op.subst_inv[5] = upr * X(5);
  op.phase = Lam() * (X(2) * X(7) + X(6) * X(3));
  return op;
}

inline AffinePhaseOp build_mult_Phi_right() {
  AffinePhaseOp op = AffinePhaseOp::identity(8);
  op.phase = Lam() * (X(2) * X(7) + X(6) * X(3));
  return op;
}

inline AffinePhaseOp build_mult_PhiPrime_left() {
  AffinePhaseOp op = AffinePhaseOp::identity(8);
  const CoordExpr dnrp = ExpOf(-(Lam() * X(6)));
  const CoordExpr shift = C(2.0) * Lam() * EtaOf(X(2)) * dnrp * X(5);
  op.subst[1] = X(1) + shift;
  op.subst_inv[1] = X(1) - shift;
  op.phase = C(2.0) * Lam() * dnrp * X(0) * X(5);
  return op;
}

inline AffinePhaseOp build_mult_PhiPrime_right() {
  AffinePhaseOp op = AffinePhaseOp::identity(8);
  const CoordExpr fac =
      ExpOf(-(Lam() * X(6)) + X(3) - X(7));  // e^{-lambda r' + w - w'}
  const CoordExpr shift = C(2.0) * Lam() * fac * EtaOf(X(6)) * X(0);
  op.subst[4] = X(4) + shift;
  op.subst_inv[4] = X(4) - shift;
  op.phase = C(2.0) * Lam() * fac * X(0) * X(5);
  return op;
}

/// Conjugate a two-leg operator by the leg swap (does not change dim).
inline AffinePhaseOp swap_two_legs(const AffinePhaseOp& op,
                                   std::size_t leg_dim) {
  std::vector<std::size_t> map(2 * leg_dim);
  for (std::size_t i = 0; i < leg_dim; ++i) {
    map[i] = leg_dim + i;
    map[leg_dim + i] = i;
  }
  return op.embed_legs(2 * leg_dim, map);
}

/// Embedding maps for two-leg operators acting on three legs.
inline std::vector<std::size_t> legs_12(std::size_t leg_dim) {
  std::vector<std::size_t> m(2 * leg_dim);
  for (std::size_t i = 0; i < 2 * leg_dim; ++i) m[i] = i;
  return m;
}
inline std::vector<std::size_t> legs_13(std::size_t leg_dim) {
  std::vector<std::size_t> m(2 * leg_dim);
  for (std::size_t i = 0; i < leg_dim; ++i) {
    m[i] = i;
    m[leg_dim + i] = 2 * leg_dim + i;
  }
  return m;
}
inline std::vector<std::size_t> legs_23(std::size_t leg_dim) {
  std::vector<std::size_t> m(2 * leg_dim);
  for (std::size_t i = 0; i < 2 * leg_dim; ++i) m[i] = leg_dim + i;
  return m;
}

}  // namespace ops

}  // namespace qheis

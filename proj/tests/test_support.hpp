#pragma once

// Shared fixtures for the numeric test binaries: the canonical grid and the
// random closed-form Gaussian family used across algebra, Hopf, and limit
// checks.  The family is tuned so that tails at the grid boundary stay below
// 1e-12 of the peak and all cocycle phases stay far from the grid Nyquist
// frequency.

#include "qheis/closed_form.hpp"
#include "qheis/common.hpp"
#include "qheis/grid.hpp"
#include "qheis/params.hpp"

namespace qtest {

inline qheis::Grid algebra_grid() {
  return qheis::Grid{{64, 64, 16}, {4.0, 4.0, 1.0}};
}

inline qheis::ModelParams algebra_params() {
  return qheis::ModelParams{1, 0.5, 1.0};
}

inline qheis::ClosedFormFunction random_cff(qheis::SplitMix64& rng) {
  qheis::ClosedFormFunction cf;
  cf.amp = qheis::cplx(rng.uniform(0.4, 1.0), rng.uniform(-0.5, 0.5));
  cf.a_u = qheis::cplx(rng.uniform(2.5, 3.2), rng.uniform(-0.3, 0.3));
  cf.a_v = qheis::cplx(rng.uniform(2.5, 3.2), rng.uniform(-0.3, 0.3));
  cf.u0 = rng.uniform(-0.2, 0.2);
  cf.v0 = rng.uniform(-0.2, 0.2);
  cf.f_u = rng.uniform(-0.3, 0.3);
  cf.f_v = rng.uniform(-0.3, 0.3);
  cf.r0 = rng.uniform(-0.05, 0.05);
  cf.rho = 0.7;
  return cf;
}

}  // namespace qtest

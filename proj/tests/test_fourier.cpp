#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qheis/closed_form.hpp"
#include "qheis/common.hpp"
#include "qheis/fourier.hpp"
#include "qheis/grid.hpp"

using namespace qheis;

namespace {

Grid test_grid() { return Grid{{32, 32, 16}, {4.0, 4.0, 4.0}}; }

SampledFunction random_smooth(const Grid& g, std::uint64_t seed,
                              const std::string& picture) {
  // Random superposition of well-contained Gaussians.
  SplitMix64 rng(seed);
  SampledFunction f(g, picture);
  for (int m = 0; m < 3; ++m) {
    const double cu = rng.uniform(-0.5, 0.5), cv = rng.uniform(-0.5, 0.5),
                 cr = rng.uniform(-0.5, 0.5);
    const cplx amp(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    const double au = rng.uniform(1.0, 2.0), av = rng.uniform(1.0, 2.0),
                 ar = rng.uniform(1.0, 2.0);
    for (std::size_t i = 0; i < g.N[0]; ++i)
      for (std::size_t j = 0; j < g.N[1]; ++j)
        for (std::size_t k = 0; k < g.N[2]; ++k) {
          const double u = g.point(0, i) - cu, v = g.point(1, j) - cv,
                       r = g.point(2, k) - cr;
          f.at(i, j, k) +=
              amp * std::exp(-au * u * u - av * v * v - ar * r * r);
        }
  }
  return f;
}

}  // namespace

TEST_CASE("fft_pow2 matches the naive DFT") {
  SplitMix64 rng(41);
  for (std::size_t n : {8u, 32u}) {
    std::vector<cplx> a(n), ref(n, cplx(0.0));
    for (auto& c : a) c = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t j = 0; j < n; ++j)
        ref[m] += a[j] * e2pi(-static_cast<double>(m * j) / static_cast<double>(n));
    auto b = a;
    fft_pow2(b, -1);
    for (std::size_t m = 0; m < n; ++m) CHECK(std::abs(b[m] - ref[m]) < 1e-11);
  }
}

TEST_CASE("self-dual Gaussian is a fixed point of the full transform") {
  Grid g{{64, 64, 64}, {4.0, 4.0, 4.0}};  // self-dual: spacing 1/8, K = 4
  SampledFunction f(g, "xyr");
  for (std::size_t i = 0; i < g.N[0]; ++i)
    for (std::size_t j = 0; j < g.N[1]; ++j)
      for (std::size_t k = 0; k < g.N[2]; ++k) {
        const double x = g.point(0, i), y = g.point(1, j), r = g.point(2, k);
        f.at(i, j, k) = std::exp(-std::numbers::pi * (x * x + y * y + r * r));
      }
  const auto fhat = fourier(f);
  REQUIRE(fhat.grid == g);
  double worst = 0.0;
  for (std::size_t m = 0; m < f.v.size(); ++m)
    worst = std::max(worst, std::abs(fhat.v[m] - f.v[m]));
  CHECK(worst < 1e-10);
}

TEST_CASE("Fourier inversion and unitarity") {
  const auto g = test_grid();
  const auto f = random_smooth(g, 42, "xyr");
  const auto fhat = fourier(f);
  const auto back = inverse_fourier(fhat);
  CHECK(back.rel_l2_dist(f) < 1e-12);
  CHECK(std::abs(fhat.norm_l2() - f.norm_l2()) < 1e-12 * f.norm_l2());
}

TEST_CASE("translation to modulation covariance") {
  const Grid g{{64, 64, 16}, {4.0, 4.0, 4.0}};
  const double shift = 0.5;  // a whole number of grid steps (spacing 1/8)
  SampledFunction f(g, "xyr"), fs(g, "xyr");
  for (std::size_t i = 0; i < g.N[0]; ++i)
    for (std::size_t j = 0; j < g.N[1]; ++j)
      for (std::size_t k = 0; k < g.N[2]; ++k) {
        const double x = g.point(0, i), y = g.point(1, j), r = g.point(2, k);
        const auto gauss = [&](double u) {
          return std::exp(-3.0 * (u * u) - y * y - r * r);
        };
        f.at(i, j, k) = gauss(x);
        fs.at(i, j, k) = gauss(x - shift);
      }
  const auto fhat = partial_fourier_wedge(SampledFunction(f));
  const auto fshat = partial_fourier_wedge(SampledFunction(fs));
  double worst = 0.0;
  for (std::size_t i = 0; i < g.N[0]; ++i)
    for (std::size_t j = 0; j < g.N[1]; ++j)
      for (std::size_t k = 0; k < g.N[2]; ++k) {
        const double p = fhat.grid.point(0, i);
        worst = std::max(worst, std::abs(fshat.at(i, j, k) -
                                         ebar(p * shift) * fhat.at(i, j, k)));
      }
  CHECK(worst < 1e-11);
}

TEST_CASE("partial transforms invert each other and match quadrature") {
  const auto g = test_grid();
  auto f = random_smooth(g, 43, "xyr");
  const auto phi = partial_fourier_wedge(f);
  CHECK(phi.picture == "pqr");
  const auto back = partial_fourier_vee(phi);
  CHECK(back.rel_l2_dist(f) < 1e-12);

  // r-independent profile stays r-independent.
  for (std::size_t i = 0; i < g.N[0]; ++i)
    for (std::size_t j = 0; j < g.N[1]; ++j)
      for (std::size_t k = 1; k < g.N[2]; ++k)
        f.at(i, j, k) = f.at(i, j, 0);
  const auto phi2 = partial_fourier_wedge(f);
  for (std::size_t k = 1; k < g.N[2]; ++k)
    CHECK(std::abs(phi2.at(3, 5, k) - phi2.at(3, 5, 0)) < 1e-12);

  // Quadrature oracle at 16 random dual grid points.
  SplitMix64 rng(44);
  for (int t = 0; t < 16; ++t) {
    const std::size_t i = rng.below(g.N[0]);
    const std::size_t j = rng.below(g.N[1]);
    const std::size_t k = rng.below(g.N[2]);
    const cplx direct = partial_wedge_quadrature(f, phi2.grid.point(0, i),
                                                 phi2.grid.point(1, j), k);
    const cplx fast = phi2.at(i, j, k);
    CHECK(std::abs(fast - direct) <= 1e-8 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("sampled function serialization round trip") {
  const auto g = test_grid();
  const auto f = random_smooth(g, 45, "pqr");
  const std::string path = "test_serialize.qhf";
  save_sampled(f, path);
  const auto back = load_sampled(path);
  CHECK(back.picture == f.picture);
  CHECK(back.grid == f.grid);
  // complex64 storage: float precision round trip.
  double worst = 0.0;
  for (std::size_t m = 0; m < f.v.size(); ++m)
    worst = std::max(worst, std::abs(back.v[m] - f.v[m]));
  CHECK(worst < 1e-6);
  std::remove(path.c_str());
}

TEST_CASE("closed form sampling agrees with evaluation and has tiny boundary mass") {
  ClosedFormFunction cf;
  cf.amp = cplx(0.7, -0.2);
  cf.a_u = cplx(2.5, 0.3);
  cf.a_v = cplx(2.8, -0.2);
  cf.u0 = 0.2;
  cf.v0 = -0.1;
  cf.f_u = 0.3;
  cf.f_v = -0.25;
  cf.rho = 0.75;
  const Grid g{{64, 64, 16}, {4.0, 4.0, 1.0}};
  const auto s = cf.sample(g, "pqr");
  CHECK(std::abs(s.at(10, 20, 8) -
                 cf.eval(g.point(0, 10), g.point(1, 20), g.point(2, 8))) == 0.0);
  CHECK(s.boundary_mass() < 1e-12);

  // Analytic derivative vs central finite difference.
  const auto dp = cf.d_du();
  const auto dq = cf.d_dv();
  const double h = 1e-6;
  SplitMix64 rng(46);
  for (int t = 0; t < 20; ++t) {
    const double u = rng.uniform(-1.0, 1.0), v = rng.uniform(-1.0, 1.0),
                 r = rng.uniform(-0.6, 0.6);
    const cplx fd_u = (cf.eval(u + h, v, r) - cf.eval(u - h, v, r)) / (2.0 * h);
    const cplx fd_v = (cf.eval(u, v + h, r) - cf.eval(u, v - h, r)) / (2.0 * h);
    CHECK(std::abs(dp.eval(u, v, r) - fd_u) < 1e-7);
    CHECK(std::abs(dq.eval(u, v, r) - fd_v) < 1e-7);
  }
}

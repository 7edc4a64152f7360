#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "qheis/common.hpp"
#include "qheis/groups.hpp"

using namespace qheis;

namespace {

std::vector<double> rand_vec(SplitMix64& rng, std::size_t n, double lo = -2.0,
                             double hi = 2.0) {
  std::vector<double> v(n);
  for (auto& c : v) c = rng.uniform(lo, hi);
  return v;
}

HeisElement rand_heis(SplitMix64& rng, std::size_t n) {
  return {rand_vec(rng, n), rand_vec(rng, n), rng.uniform(-2.0, 2.0)};
}

GElement rand_g(SplitMix64& rng, std::size_t n) {
  return {rand_vec(rng, n), rand_vec(rng, n), rng.uniform(-2.0, 2.0)};
}

ExtHeisElement rand_ext_heis(SplitMix64& rng, std::size_t n) {
  return {rand_vec(rng, n), rand_vec(rng, n), rng.uniform(-2.0, 2.0),
          rng.uniform(-1.5, 1.5)};
}

ExtGElement rand_ext_g(SplitMix64& rng, std::size_t n) {
  return {rand_vec(rng, n), rand_vec(rng, n), rng.uniform(-2.0, 2.0),
          rng.uniform(-2.0, 2.0)};
}

double heis_dist(const HeisElement& a, const HeisElement& b) {
  double d = std::abs(a.z - b.z);
  for (std::size_t i = 0; i < a.x.size(); ++i) {
    d = std::max(d, std::abs(a.x[i] - b.x[i]));
    d = std::max(d, std::abs(a.y[i] - b.y[i]));
  }
  return d;
}

double g_dist(const GElement& a, const GElement& b) {
  double d = std::abs(a.r - b.r);
  for (std::size_t i = 0; i < a.p.size(); ++i) {
    d = std::max(d, std::abs(a.p[i] - b.p[i]));
    d = std::max(d, std::abs(a.q[i] - b.q[i]));
  }
  return d;
}

double ext_heis_dist(const ExtHeisElement& a, const ExtHeisElement& b) {
  double d = std::max(std::abs(a.z - b.z), std::abs(a.w - b.w));
  for (std::size_t i = 0; i < a.x.size(); ++i) {
    d = std::max(d, std::abs(a.x[i] - b.x[i]));
    d = std::max(d, std::abs(a.y[i] - b.y[i]));
  }
  return d;
}

double ext_g_dist(const ExtGElement& a, const ExtGElement& b) {
  double d = std::max(std::abs(a.r - b.r), std::abs(a.s - b.s));
  for (std::size_t i = 0; i < a.p.size(); ++i) {
    d = std::max(d, std::abs(a.p[i] - b.p[i]));
    d = std::max(d, std::abs(a.q[i] - b.q[i]));
  }
  return d;
}

}  // namespace

TEST_CASE("beta pairing") {
  CHECK(beta({1, 2}, {3, 4}) == doctest::Approx(11.0));
  CHECK(beta({1.5, -2.5, 0.25}, {0, 0, 0}) == 0.0);
  CHECK(beta({1, 0}, {0, 1}) == 0.0);
  CHECK_THROWS_AS(beta({1, 2}, {1}), std::invalid_argument);
}

TEST_CASE("eta values and small-lambda limit") {
  CHECK(eta(0.0, 5.0) == 5.0);
  CHECK(eta(0.7, 0.0) == 0.0);
  CHECK(eta(0.5, 1.0) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));

  // |eta_lambda(r) - r| <= C |lambda| r^2 e^{2|lambda||r|} on samples.
  SplitMix64 rng(11);
  for (int k = 0; k < 200; ++k) {
    const double r = rng.uniform(-2.0, 2.0);
    const double lam = rng.uniform(-0.25, 0.25);
    const double bound =
        2.0 * std::abs(lam) * r * r * std::exp(2.0 * std::abs(lam * r));
    CHECK(std::abs(eta(lam, r) - r) <= bound + 1e-15);
  }
}

TEST_CASE("eta scaling identity") {
  CHECK(eta_identity_defect(0.5, 1.0, 1.0) < 1e-14);
  CHECK(eta_identity_defect(0.9, 0.3, 0.0) == 0.0);
  CHECK(eta_identity_defect(0.0, 1.3, -0.4) == 0.0);
  SplitMix64 rng(12);
  for (int k = 0; k < 1000; ++k) {
    const double lam = rng.uniform(-2.0, 2.0);
    const double r = rng.uniform(-2.0, 2.0);
    const double rp = rng.uniform(-2.0, 2.0);
    // 4 ulps of the combined intermediate operand magnitudes.
    const double pre = std::exp(-2.0 * lam * rp);
    const double scale = 1.0 + pre * std::abs(eta(lam, r + rp)) +
                         pre * std::abs(eta(lam, rp)) + std::abs(eta(lam, r));
    CHECK(eta_identity_defect(lam, r, rp) <=
          4.0 * std::numeric_limits<double>::epsilon() * scale);
  }
}

TEST_CASE("Heisenberg group law") {
  HeisElement a{{1}, {0}, 0};
  HeisElement b{{0}, {1}, 0};
  HeisElement ab = heis_mul(a, b);
  CHECK(ab.x[0] == 1.0);
  CHECK(ab.y[0] == 1.0);
  CHECK(ab.z == 1.0);
  // Noncommutativity witness: b*a has no central contribution.
  CHECK(heis_mul(b, a).z == 0.0);

  SplitMix64 rng(21);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 1 + rng.below(3);
    auto g = rand_heis(rng, n);
    auto h = rand_heis(rng, n);
    auto f = rand_heis(rng, n);
    CHECK(heis_dist(heis_mul(heis_mul(g, h), f), heis_mul(g, heis_mul(h, f))) <
          1e-12);
    auto id = HeisElement::identity(n);
    CHECK(heis_dist(heis_mul(g, id), g) == 0.0);
    CHECK(heis_dist(heis_mul(g, heis_inv(g)), id) < 1e-13);
    CHECK(heis_dist(heis_mul(heis_inv(g), g), id) < 1e-13);
  }
}

TEST_CASE("dual group law") {
  // lambda = 0 reduces to componentwise addition.
  GElement u{{1, 2}, {3, 4}, 0.5};
  GElement v{{5, 6}, {7, 8}, -0.25};
  auto sum = g_mul(u, v, 0.0);
  CHECK(sum.p[0] == 6.0);
  CHECK(sum.q[1] == 12.0);
  CHECK(sum.r == 0.25);

  // lambda = 1: (1,1,0)*(0,0,ln 2) = (2,2,ln 2).
  GElement w{{1}, {1}, 0};
  GElement s{{0}, {0}, std::log(2.0)};
  auto ws = g_mul(w, s, 1.0);
  CHECK(ws.p[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(ws.q[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(ws.r == doctest::Approx(std::log(2.0)).epsilon(1e-14));

  SplitMix64 rng(22);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 1 + rng.below(3);
    const double lam = rng.uniform(-2.0, 2.0);
    auto g = rand_g(rng, n);
    auto h = rand_g(rng, n);
    auto f = rand_g(rng, n);
    CHECK(g_dist(g_mul(g_mul(g, h, lam), f, lam),
                 g_mul(g, g_mul(h, f, lam), lam)) < 1e-12);
    auto id = GElement::identity(n);
    CHECK(g_dist(g_mul(g, id, lam), g) == 0.0);
    CHECK(g_dist(g_mul(g, g_inv(g, lam), lam), id) < 1e-12);
    CHECK(g_dist(g_mul(g_inv(g, lam), g, lam), id) < 1e-12);
  }
}

TEST_CASE("extended Heisenberg group law") {
  // The w = 0 slice reproduces the plain group law.
  SplitMix64 rng(23);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 1 + rng.below(3);
    auto g = rand_heis(rng, n);
    auto h = rand_heis(rng, n);
    ExtHeisElement ge{g.x, g.y, g.z, 0.0};
    ExtHeisElement he{h.x, h.y, h.z, 0.0};
    auto prod = ext_heis_mul(ge, he);
    auto plain = heis_mul(g, h);
    CHECK(ext_heis_dist(prod, {plain.x, plain.y, plain.z, 0.0}) < 1e-13);
  }

  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 1 + rng.below(3);
    auto g = rand_ext_heis(rng, n);
    auto h = rand_ext_heis(rng, n);
    auto f = rand_ext_heis(rng, n);
    CHECK(ext_heis_dist(ext_heis_mul(ext_heis_mul(g, h), f),
                        ext_heis_mul(g, ext_heis_mul(h, f))) < 1e-12);
    auto id = ExtHeisElement::identity(n);
    CHECK(ext_heis_dist(ext_heis_mul(g, id), g) == 0.0);
    CHECK(ext_heis_dist(ext_heis_mul(g, ext_heis_inv(g)), id) < 1e-12);
    CHECK(ext_heis_dist(ext_heis_mul(ext_heis_inv(g), g), id) < 1e-12);
  }
}

TEST_CASE("extended dual group law") {
  // s coordinate is additive.
  ExtGElement a{{1}, {0}, 0, 2.5};
  ExtGElement b{{0}, {0}, std::log(2.0), 3.0};
  auto ab = ext_g_mul(a, b, 1.0);
  CHECK(ab.s == 5.5);
  CHECK(ab.p[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(ab.r == doctest::Approx(std::log(2.0)).epsilon(1e-14));

  SplitMix64 rng(24);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 1 + rng.below(3);
    const double lam = rng.uniform(-2.0, 2.0);
    auto g = rand_ext_g(rng, n);
    auto h = rand_ext_g(rng, n);
    auto f = rand_ext_g(rng, n);
    CHECK(ext_g_dist(ext_g_mul(ext_g_mul(g, h, lam), f, lam),
                     ext_g_mul(g, ext_g_mul(h, f, lam), lam)) < 1e-12);
    auto id = ExtGElement::identity(n);
    CHECK(ext_g_dist(ext_g_mul(g, id, lam), g) == 0.0);
    CHECK(ext_g_dist(ext_g_mul(g, ext_g_inv(g, lam), lam), id) < 1e-12);
    CHECK(ext_g_dist(ext_g_mul(ext_g_inv(g, lam), g, lam), id) < 1e-12);
  }
}

TEST_CASE("phase convention helpers") {
  CHECK(std::abs(e2pi(1.0) - cplx(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(e2pi(0.25) - cplx(0.0, 1.0)) < 1e-15);
  CHECK(std::abs(ebar(0.25) - cplx(0.0, -1.0)) < 1e-15);
  SplitMix64 rng(25);
  for (int k = 0; k < 100; ++k) {
    const double t = rng.uniform(-3.0, 3.0);
    CHECK(std::abs(e2pi(t) * ebar(t) - cplx(1.0, 0.0)) < 1e-14);
  }
}

TEST_CASE("ModelParams validation") {
  ModelParams good{1, 0.5, 1.0};
  CHECK_NOTHROW(good.require_quantum());
  ModelParams zero_lambda{1, 0.0, 1.0};
  CHECK_THROWS_AS(zero_lambda.require_quantum(), std::invalid_argument);
  ModelParams zero_n{0, 1.0, 1.0};
  CHECK_THROWS_AS(zero_n.require_quantum(), std::invalid_argument);
}

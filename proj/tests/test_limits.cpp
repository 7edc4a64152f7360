#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "qheis/psi_limit.hpp"

using namespace qheis;

namespace {

ExtPairFunction test_pair(std::uint64_t seed) {
  SplitMix64 rng(seed);
  ExtPairFunction F;
  F.leg1 = suite_detail::random_cff_gauss_r(rng, 4.0);
  F.leg2 = suite_detail::random_cff_gauss_r(rng, 4.0);
  return F;
}

}  // namespace

TEST_CASE("R conjugation is the identity at lambda = 0") {
  const auto F = test_pair(11);
  SplitMix64 rng(12);
  for (int k = 0; k < 32; ++k) {
    std::array<double, 8> v;
    for (auto& x : v) x = rng.uniform(-2.0, 2.0);
    CHECK(std::abs(psi_conjugation(F, 0.0, v) - F.eval(v)) == 0.0);
  }
}

TEST_CASE("bracket reduction matches the regularized defining integral") {
  const auto F = test_pair(13);
  SplitMix64 rng(14);
  for (int k = 0; k < 8; ++k) {
    std::array<double, 8> v;
    for (auto& x : v) x = rng.uniform(-1.0, 1.0);
    const cplx closed = psi_bracket(F, v);
    const cplx oracle = psi_bracket_oracle(F, v);
    CHECK(std::abs(closed - oracle) <=
          1e-3 * std::max(1e-6, std::abs(closed)));
  }
}

TEST_CASE("bracket is linear in its function argument") {
  auto F = test_pair(15);
  const std::array<double, 8> v{0.4, -0.3, 0.5, 0.2, -0.6, 0.7, -0.4, 0.1};
  const cplx base = psi_bracket(F, v);
  auto G = F;
  G.leg1.amp *= cplx(2.0, -1.5);
  CHECK(std::abs(psi_bracket(G, v) - cplx(2.0, -1.5) * base) <
        1e-12 * std::abs(base));
}

TEST_CASE("Monte-Carlo defect is deterministic and first order in lambda") {
  const auto F = test_pair(16);
  const auto a = r_classical_limit_defect(F, 0.25, 100000, 99);
  const auto b = r_classical_limit_defect(F, 0.25, 100000, 99);
  CHECK(a.l1 == b.l1);
  CHECK(a.l2 == b.l2);
  const auto half = r_classical_limit_defect(F, 0.125, 100000, 99);
  CHECK(half.l1 < 0.7 * a.l1);
  CHECK(half.l1 > 0.0);
}

TEST_CASE("suite: classical limits") {
  const ModelParams params{1, 0.5, 1.0};
  const Grid grid{{64, 64, 16}, {4.0, 4.0, 1.0}};
  const auto rep = suite_limits(params, grid, 7);
  for (const auto& c : rep.checks) {
    INFO(rep.suite << "/" << c.name << ": defect " << c.defect << " vs tol "
                   << c.tol << "  [" << c.anchor << "]");
    CHECK(c.pass);
  }

  // CSV artifacts have the documented header and four sweep rows.
  for (const char* key : {"lambda_sweep_csv", "hbar_sweep_csv"}) {
    REQUIRE(rep.artifacts.contains(key));
    const std::string csv = rep.artifacts[key];
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "parameter,defect_L1,defect_L2,ratio");
    int rows = 0;
    while (std::getline(in, line))
      if (!line.empty()) ++rows;
    CHECK(rows == 4);
  }
}

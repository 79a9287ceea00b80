#include <cmath>
#include <sstream>
#include <string>

#include "check.hpp"
#include "doctest.h"
#include "liouville/blocks.hpp"

using namespace liouville;
using liouville::testing::rel_diff;

namespace {

BlockParams sample_params() {
  const LiouvilleParams p(1.0, 1.0);
  return BlockParams::from_alphas(1.6, 1.4, 1.5, 1.2, 0.8, p);
}

}  // namespace

TEST_CASE("v weights") {
  const cplx d(0.3, 0.1), d1(1.2, -0.2), d2(2.5, 0.0);
  CHECK(v_weight(d, d1, d2, YoungDiagram()) == 1.0);
  CHECK(std::abs(v_weight(d, d1, d2, YoungDiagram({1})) - (d1 - d + d2)) < 1e-15);
  const cplx f = d1 - d + d2;
  CHECK(std::abs(v_weight(d, d1, d2, YoungDiagram({1, 1})) - f * (f + 1.0)) < 1e-14);
  CHECK(std::abs(v_weight(d, d1, d2, YoungDiagram({2, 1})) -
                 (2.0 * d1 - d + d2) * (d1 - d + d2 + 2.0)) < 1e-14);
}

TEST_CASE("closed forms at levels 0 and 1") {
  const BlockParams bp = sample_params();
  CHECK(beta_n(0, bp) == 1.0);
  const cplx expected = (bp.dP + bp.d2 - bp.d1) * (bp.dP + bp.d3 - bp.d4) / (2.0 * bp.dP);
  CHECK(rel_diff(beta_n(1, bp), expected) < 1e-12);
  BlockParams sym = bp;
  sym.d2 = sym.d1;
  sym.d3 = sym.d4;
  CHECK(rel_diff(beta_n(1, sym), sym.dP / 2.0) < 1e-12);
}

TEST_CASE("inverse and solve routes agree") {
  const BlockParams bp = sample_params();
  for (int n = 0; n <= 6; ++n) {
    CAPTURE(n);
    CHECK(rel_diff(beta_n(n, bp, BetaMethod::inverse), beta_n(n, bp, BetaMethod::solve)) < 1e-12);
  }
  BlockParams cp = bp;
  cp.dP += cplx(0.0, 0.3);
  for (int n = 1; n <= 4; ++n) {
    CHECK(rel_diff(beta_n(n, cp, BetaMethod::inverse), beta_n(n, cp, BetaMethod::solve)) < 1e-11);
  }
}

TEST_CASE("exchange symmetry and reality") {
  const BlockParams bp = sample_params();
  BlockParams swapped = bp;
  swapped.d1 = bp.d4;
  swapped.d2 = bp.d3;
  swapped.d3 = bp.d2;
  swapped.d4 = bp.d1;
  for (int n = 0; n <= 6; ++n) {
    const cplx b = beta_n(n, bp);
    CHECK(rel_diff(b, beta_n(n, swapped)) < 1e-12);
    CHECK(b.imag() == 0.0);
  }
}

TEST_CASE("complex intermediate weight is continuous with the real path") {
  const BlockParams bp = sample_params();
  BlockParams cp = bp;
  cp.dP += cplx(0.0, 1e-9);
  for (int n = 1; n <= 4; ++n) CHECK(rel_diff(beta_n(n, bp), beta_n(n, cp)) < 1e-8);
}

TEST_CASE("series evaluation") {
  const BlockParams bp = sample_params();
  CHECK(block_eval(0.0, bp, 6).value == 1.0);
  const BlockValue v1 = block_eval(0.3, bp, 1);
  CHECK(std::abs(v1.value - (1.0 + beta_n(1, bp) * 0.3)) < 1e-14);
  const BlockValue v4 = block_eval(0.3, bp, 4);
  const BlockValue v8 = block_eval(0.3, bp, 8);
  CHECK_FALSE(v4.divergent);
  CHECK(std::abs(v4.value - v8.value) <= v4.tail_estimate);
  CHECK_THROWS(block_eval(1.0, bp, 2));
}

TEST_CASE("root-test diagnostic") {
  const LiouvilleParams p(1.0, 1.0);
  const BlockParams bp = BlockParams::from_alphas(1.5, 1.5, 1.5, 1.5, 1.0, p);
  const auto roots = radius_diagnostic(bp, 8);
  REQUIRE(roots.size() == 8);
  for (double r : roots) {
    CHECK(std::isfinite(r));
    CHECK(r < 10.0);
  }
}

TEST_CASE("CSV output") {
  const auto beta = block_coefficients(sample_params(), 5);
  std::ostringstream os;
  write_block_csv(os, beta);
  const std::string s = os.str();
  int lines = 0;
  for (char ch : s) lines += ch == '\n';
  CHECK(lines == 1 + 6);
  CHECK(s.rfind("n,re_beta,im_beta,root_abs\n", 0) == 0);
}

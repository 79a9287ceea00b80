#include <cmath>
#include <numbers>
#include <vector>

#include "check.hpp"
#include "doctest.h"
#include "liouville/error.hpp"
#include "liouville/special.hpp"

using namespace liouville;
using liouville::testing::rel_diff;

namespace {

constexpr double kPi = std::numbers::pi;

// ln Gamma by upward recurrence to |z| > 15 followed by the Stirling series.
cplx stirling_log_gamma(cplx z) {
  cplx shift = 0.0;
  while (std::abs(z) < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  const cplx z2 = 1.0 / (z * z);
  const cplx series =
      (1.0 / 12.0 + z2 * (-1.0 / 360.0 + z2 * (1.0 / 1260.0 + z2 * (-1.0 / 1680.0 +
                                                                     z2 * (1.0 / 1188.0))))) /
      z;
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series - shift;
}

// Compares logs modulo 2 pi i.
double log_diff(cplx a, cplx b) {
  const double re = std::abs(a.real() - b.real());
  const double im = std::abs(std::remainder(a.imag() - b.imag(), 2.0 * kPi));
  return std::max(re, im) / std::max(1.0, std::abs(b));
}

}  // namespace

TEST_CASE("log_gamma trivial values") {
  CHECK(std::abs(log_gamma(1.0)) < 1e-15);
  CHECK(std::abs(log_gamma(2.0)) < 1e-15);
  CHECK(std::abs(log_gamma(0.5) - std::log(std::sqrt(kPi))) < 1e-15);
}

TEST_CASE("log_gamma agrees with the Stirling oracle and frozen values") {
  CHECK(rel_diff(log_gamma(2.5), 0.284682870472919159632494669683) < 1e-13);
  CHECK(rel_diff(log_gamma(2.5), stirling_log_gamma(2.5)) < 1e-12);
  struct Case {
    cplx z;
    cplx expected;
  };
  const std::vector<Case> cases = {
      {{3.0, 4.0}, {-1.75662678460378411053060418162, 4.74266443803465792819488940755}},
      {{-2.5, 0.5}, {-0.935085621298277478682588384941, -8.87096288524745919864582471649}},
      {{0.1, -7.0}, {-10.8548770444209025172371087711, -5.98757015330144030731665344233}},
      {{-7.3, 0.0}, {-7.77910162982685167132772432545, -25.1327412287183459077011470662}},
      {{40.0, 5.0}, {106.316160924625812607332141711, 18.3949236267013398474628150006}},
  };
  for (const auto& c : cases) {
    CAPTURE(c.z);
    CHECK(log_diff(log_gamma(c.z), c.expected) < 1e-12);
    CHECK(log_diff(log_gamma(c.z), stirling_log_gamma(c.z)) < 1e-12);
  }
  for (double x = -9.75; x < 50.0; x += 0.5) {
    CAPTURE(x);
    const cplx z(x, 0.3 * x);
    CHECK(log_diff(log_gamma(z), stirling_log_gamma(z)) < 1e-12);
  }
}

TEST_CASE("log_gamma imaginary part is reduced to (-pi, pi]") {
  for (const cplx z : {cplx(-7.3, 0.0), cplx(40.0, 5.0), cplx(0.1, -7.0)}) {
    const double im = log_gamma(z).imag();
    CHECK(im > -kPi);
    CHECK(im <= kPi);
  }
}

TEST_CASE("log_gamma poles") {
  for (double k : {0.0, -1.0, -2.0, -17.0}) {
    CHECK_THROWS_AS(log_gamma(k), PoleError);
  }
}

TEST_CASE("ell values, zeros and poles") {
  CHECK(rel_diff(ell(0.5), 1.0) < 1e-15);
  const cplx z(0.3, 0.1);
  CHECK(rel_diff(ell(z) * ell(1.0 - z), 1.0) < 1e-14);
  CHECK(rel_diff(ell(0.3), 2.30465444149124584576658791898) < 1e-13);
  CHECK(rel_diff(ell(z), cplx(1.97622356720624422754286299734, -0.977671233632560410502993589275)) <
        1e-13);
  CHECK(ell(1.0) == 0.0);
  CHECK(ell(3.0) == 0.0);
  CHECK_THROWS_AS(ell(0.0), PoleError);
  CHECK_THROWS_AS(ell(-2.0), PoleError);
  CHECK_THROWS_AS(log_ell(2.0), PoleError);
}

TEST_CASE("upsilon at the centre of the strip is one") {
  for (double g : {0.3, 0.6, 1.0, 1.4, 1.9}) {
    const LiouvilleParams p(g, 1.0);
    CHECK(std::abs(upsilon(p.Q() / 2.0, p) - 1.0) < 1e-12);
  }
}

TEST_CASE("upsilon matches the independent high-precision oracle") {
  const LiouvilleParams g1(1.0, 1.0);
  CHECK(rel_diff(upsilon(0.3, g1), 0.223374339949339084280318359363) < 1e-9);
  CHECK(rel_diff(upsilon(cplx(0.7, 0.4), g1),
                 cplx(0.750325259326894414572055934676, 0.483840231497470851636527852645)) <
        1e-9);
  CHECK(rel_diff(upsilon(-0.8, g1), 0.0335612815740571465061490180554) < 1e-9);
  CHECK(rel_diff(upsilon(cplx(3.1, 0.2), g1),
                 cplx(0.0398831320410979916140256231168, 0.0431211148610996371649659135629)) <
        1e-9);
  CHECK(rel_diff(upsilon(0.5, LiouvilleParams(1.7, 1.0)), 0.633318734943882788385109563691) <
        1e-9);
  CHECK(rel_diff(upsilon(cplx(1.3, 2.0), LiouvilleParams(0.6, 1.0)),
                 cplx(5.65537536269147826626884842223, 2.28149920776179311444811479902)) < 1e-9);
}

TEST_CASE("upsilon reflection symmetry") {
  const LiouvilleParams p(1.0, 1.0);
  CHECK(rel_diff(upsilon(0.7, p), upsilon(p.Q() - 0.7, p)) < 1e-10);
  for (double g : {0.6, 1.0, 1.4}) {
    const LiouvilleParams q(g, 1.0);
    for (const cplx z : {cplx(-1.3, 0.2), cplx(0.25, -0.7), cplx(1.1, 1.5), cplx(4.2, -0.3)}) {
      CAPTURE(g);
      CAPTURE(z);
      CHECK(rel_diff(upsilon(z, q), upsilon(q.Q() - z, q)) < 1e-8);
    }
  }
}

TEST_CASE("upsilon shift relations across the strip boundary") {
  for (double g : {0.6, 1.0, 1.4, 1.8}) {
    const LiouvilleParams p(g, 1.0);
    for (const cplx z : {cplx(-0.35, 0.1), cplx(0.05, -0.4), cplx(p.Q() - 0.1, 0.3)}) {
      CAPTURE(g);
      CAPTURE(z);
      const cplx lhs1 = upsilon(z + g / 2.0, p);
      const cplx rhs1 = ell(g * z / 2.0) * std::pow(g / 2.0, 1.0 - g * z) * upsilon(z, p);
      CHECK(rel_diff(lhs1, rhs1) < 1e-8);
      const cplx lhs2 = upsilon(z + 2.0 / g, p);
      const cplx rhs2 = ell(2.0 * z / g) * std::pow(g / 2.0, 4.0 * z / g - 1.0) * upsilon(z, p);
      CHECK(rel_diff(lhs2, rhs2) < 1e-8);
    }
  }
}

TEST_CASE("upsilon zero lattice") {
  const LiouvilleParams p(1.0, 1.0);
  CHECK(upsilon(0.0, p) == 0.0);
  CHECK(log_upsilon(0.0, p).zero);
  CHECK(log_upsilon(-0.5, p).zero);            // -(gamma/2)
  CHECK(log_upsilon(-2.5, p).zero);            // -(gamma/2) - 2/gamma
  CHECK(log_upsilon(p.Q(), p).zero);
  CHECK(log_upsilon(p.Q() + 2.0 + 1.5, p).zero);
  CHECK_FALSE(log_upsilon(0.25, p).zero);
  CHECK_FALSE(log_upsilon(cplx(0.0, 0.1), p).zero);
  // Simple zero: Upsilon(h) / h tends to Upsilon'(0).
  const double h = 1e-6;
  CHECK(rel_diff(upsilon(h, p).real() / h, upsilon_prime_zero(p)) < 1e-5);
}

TEST_CASE("upsilon_prime_zero consistency") {
  const LiouvilleParams g1(1.0, 1.0);
  CHECK(rel_diff(upsilon_prime_zero(g1), 0.442073073391811087582266914821) < 1e-9);
  for (double g : {0.5, 1.0, 1.5}) {
    const LiouvilleParams p(g, 1.0);
    const double u = upsilon_prime_zero(p);
    CHECK(u > 0.0);
    CHECK(rel_diff(u, upsilon(g / 2.0, p).real()) < 1e-8);
    const double h = 1e-4;
    const double fd = (upsilon(h, p) - upsilon(-h, p)).real() / (2.0 * h);
    CHECK(rel_diff(fd, u) < 1e-5);
  }
}

TEST_CASE("dozz frozen values") {
  const LiouvilleParams p(1.0, 1.0);
  CHECK(rel_diff(dozz(0.9, 1.1, 1.3, p), 975.778948797206286140770945645) < 1e-8);
  CHECK(rel_diff(dozz(2.4, 2.4, 2.4, p), 5.58509551514563590608743052882e-6) < 1e-8);
  CHECK(rel_diff(dozz(1.6, 1.4, cplx(2.5, -1.3), p),
                 cplx(-0.347795667328192775188205621159, -0.511747546789209901464906740769)) <
        1e-8);
  CHECK(rel_diff(dozz(1.0, 1.2, cplx(0.8, 0.3), LiouvilleParams(1.5, 0.7)),
                 cplx(-14.6680077950898051811074472079, 44.0795807666715388186263631649)) < 1e-8);
}

TEST_CASE("dozz permutation symmetry, mu scaling, reality and conjugation") {
  const LiouvilleParams p(1.0, 1.0);
  const cplx ref = dozz(0.9, 1.1, 1.3, p);
  CHECK(rel_diff(dozz(1.1, 0.9, 1.3, p), ref) < 1e-13);
  CHECK(rel_diff(dozz(1.3, 1.1, 0.9, p), ref) < 1e-13);
  CHECK(ref.imag() == 0.0);
  const double abar = 3.3;
  const double power = std::pow(2.0, (2.0 * p.Q() - abar) / p.gamma());
  CHECK(rel_diff(dozz(0.9, 1.1, 1.3, p.with_mu(2.0)), power * ref) < 1e-13);
  const cplx a3(1.2, 0.7);
  CHECK(rel_diff(dozz(1.0, 1.4, std::conj(a3), p), std::conj(dozz(1.0, 1.4, a3, p))) < 1e-12);
}

TEST_CASE("dozz pole at abar = 2Q") {
  const LiouvilleParams p(1.0, 1.0);
  const double Q = p.Q();
  try {
    dozz(Q - 0.4, Q - 0.4, 0.8, p);
    FAIL("expected a pole");
  } catch (const PoleError& e) {
    CHECK(std::abs(e.location()) < 1e-12);
  }
  double prev = 0.0;
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const double v = std::abs(dozz(Q - 0.4, Q - 0.4, 0.8 - eps, p));
    CHECK(v > prev);
    prev = v;
  }
}

#include <cmath>
#include <random>
#include <vector>

#include "check.hpp"
#include "doctest.h"
#include "liouville/fock.hpp"
#include "liouville/virasoro.hpp"

using namespace liouville;
using liouville::testing::rel_diff;

namespace {

const cplx I(0.0, 1.0);

double distance(const FockPolynomial& a, const FockPolynomial& b) {
  return (a - b).max_abs() / std::max({1.0, a.max_abs(), b.max_abs()});
}

// Monomials in x_1, y_1, x_2, y_2, x_3 of total degree <= max_degree.
std::vector<FockPolynomial> test_monomials(int max_degree) {
  std::vector<FockPolynomial> out;
  const std::vector<FockPolynomial> vars = {FockPolynomial::x(1), FockPolynomial::y(1),
                                            FockPolynomial::x(2), FockPolynomial::y(2),
                                            FockPolynomial::x(3)};
  std::vector<FockPolynomial> layer = {FockPolynomial::one()};
  out.push_back(layer[0]);
  for (int d = 1; d <= max_degree; ++d) {
    std::vector<FockPolynomial> next;
    for (std::size_t v = 0; v < vars.size(); ++v) {
      // Grow along the last variable only to avoid duplicates.
      for (const auto& m : layer) next.push_back(m * vars[v]);
    }
    layer.swap(next);
    // Keep the basis small: a deterministic sample per degree.
    std::vector<FockPolynomial> kept;
    for (std::size_t i = 0; i < layer.size(); i += 3) kept.push_back(layer[i]);
    layer.swap(kept);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

}  // namespace

TEST_CASE("Heisenberg operators on the vacuum") {
  const FockPolynomial one = FockPolynomial::one();
  CHECK(apply_A(1, one).is_zero());
  CHECK(distance(apply_A(-1, one), FockPolynomial::phi(1) * (-I)) < 1e-15);
  CHECK(apply_A(2, one, ModeFamily::twin).is_zero());
  CHECK(distance(apply_A(-1, one, ModeFamily::twin), FockPolynomial::phi(-1) * (-I)) < 1e-15);
}

TEST_CASE("Heisenberg commutators") {
  for (const auto& m : test_monomials(4)) {
    for (ModeFamily fam : {ModeFamily::standard, ModeFamily::twin}) {
      for (int n = 1; n <= 3; ++n) {
        const FockPolynomial comm = apply_A(n, apply_A(-n, m, fam), fam) -
                                    apply_A(-n, apply_A(n, m, fam), fam);
        CHECK(distance(comm, m * (0.5 * n)) < 1e-13);
        const FockPolynomial zero = apply_A(n, apply_A(n + 1, m, fam), fam) -
                                    apply_A(n + 1, apply_A(n, m, fam), fam);
        CHECK(zero.max_abs() < 1e-13);
      }
    }
    // Cross-family operators commute.
    const FockPolynomial cross = apply_A(1, apply_A(-1, m), ModeFamily::twin) -
                                 apply_A(-1, apply_A(1, m, ModeFamily::twin));
    CHECK(cross.max_abs() < 1e-13);
  }
}

TEST_CASE("Virasoro generators on the vacuum") {
  const LiouvilleParams p(1.0, 1.0);
  const cplx alpha(0.8, 0.3);
  const FockPolynomial one = FockPolynomial::one();
  CHECK(distance(apply_L(0, alpha, p, one), one * conformal_weight(alpha, p.Q())) < 1e-15);
  for (int n = 1; n <= 3; ++n) CHECK(apply_L(n, alpha, p, one).is_zero());
  CHECK(distance(apply_L(-1, alpha, p, one), FockPolynomial::phi(1) * alpha) < 1e-15);
}

TEST_CASE("descendant polynomials") {
  const LiouvilleParams p(1.0, 1.0);
  const cplx alpha(0.8, 0.3);
  const YoungDiagram empty;
  const YoungDiagram one({1});
  CHECK(distance(descendant_poly(alpha, p, empty, empty), FockPolynomial::one()) < 1e-15);
  CHECK(distance(descendant_poly(alpha, p, one, empty), FockPolynomial::phi(1) * alpha) < 1e-15);
  CHECK(distance(descendant_poly(alpha, p, one, one),
                 (FockPolynomial::phi(1) * FockPolynomial::phi(-1) - FockPolynomial::one() * 0.5) *
                     (alpha * alpha)) < 1e-14);
}

TEST_CASE("Gaussian inner product") {
  const FockPolynomial one = FockPolynomial::one();
  CHECK(std::abs(fock_inner(one, one) - 1.0) < 1e-15);
  const FockPolynomial phi1 = FockPolynomial::phi(1);
  CHECK(std::abs(fock_inner(phi1, phi1) - 0.5) < 1e-15);
  const FockPolynomial x = FockPolynomial::x(1);
  const FockPolynomial he2 = x * x - one;
  CHECK(std::abs(fock_inner(he2, x)) < 1e-15);
  CHECK(std::abs(fock_inner(he2, he2) - 2.0) < 1e-14);
  // E[x^4] = 3 and sesquilinearity.
  CHECK(std::abs(fock_inner(x * x, x * x) - 3.0) < 1e-14);
  CHECK(std::abs(fock_inner(x * I, x) - I) < 1e-15);
  CHECK(std::abs(fock_inner(x, x * I) + I) < 1e-15);
}

TEST_CASE("number operator") {
  const LiouvilleParams p(1.0, 1.0);
  CHECK(apply_number_operator(FockPolynomial::one()).is_zero());
  const HermiteState s1{{1}, {}};
  CHECK(distance(apply_number_operator(s1.polynomial()), s1.polynomial()) < 1e-15);
  const HermiteState s2{{2, 0, 1}, {0, 3}};
  CHECK(s2.eigenvalue() == 2 + 3 + 6);
  CHECK(distance(apply_number_operator(s2.polynomial()), s2.polynomial() * 11.0) < 1e-13);
  CHECK(std::abs(fock_inner(s2.polynomial(), s2.polynomial()) - 1.0) < 1e-13);
  const FockPolynomial q = descendant_poly(cplx(0.8, 0.3), p, YoungDiagram({2}), YoungDiagram({1}));
  CHECK(distance(apply_number_operator(q), q * 3.0) < 1e-13);
}

TEST_CASE("Virasoro commutation relations") {
  const LiouvilleParams p(1.0, 1.0);
  const cplx alpha(0.7, -0.4);
  const double c = p.central_charge();
  for (const auto& m : test_monomials(3)) {
    for (int a = -3; a <= 3; ++a) {
      for (int b = -3; b <= 3; ++b) {
        if (a <= b) continue;
        const FockPolynomial lhs = apply_L(a, alpha, p, apply_L(b, alpha, p, m)) -
                                   apply_L(b, alpha, p, apply_L(a, alpha, p, m));
        FockPolynomial rhs = apply_L(a + b, alpha, p, m) * static_cast<double>(a - b);
        if (a + b == 0) rhs += m * (c / 12.0 * (a * a * a - a));
        CAPTURE(a);
        CAPTURE(b);
        CHECK(distance(lhs, rhs) < 1e-11);
      }
    }
  }
}

TEST_CASE("the two Virasoro families commute") {
  const LiouvilleParams p(1.0, 1.0);
  const cplx alpha(1.1, 0.2);
  for (const auto& m : test_monomials(3)) {
    for (int a : {-2, -1, 1, 2}) {
      for (int b : {-2, -1, 0, 1}) {
        const FockPolynomial comm =
            apply_L(a, alpha, p, apply_L(b, alpha, p, m, ModeFamily::twin)) -
            apply_L(b, alpha, p, apply_L(a, alpha, p, m), ModeFamily::twin);
        CHECK(comm.max_abs() < 1e-11 * std::max(1.0, m.max_abs()));
      }
    }
  }
}

TEST_CASE("adjointness") {
  const LiouvilleParams p(1.0, 1.0);
  const cplx alpha(0.9, 0.6);
  const cplx dual = 2.0 * p.Q() - std::conj(alpha);
  const auto ms = test_monomials(3);
  for (int n : {-2, -1, 1, 2, 3}) {
    for (std::size_t i = 0; i < ms.size(); i += 2) {
      for (std::size_t j = 1; j < ms.size(); j += 3) {
        const cplx lhs = fock_inner(apply_L(n, alpha, p, ms[i]), ms[j]);
        const cplx rhs = fock_inner(ms[i], apply_L(-n, dual, p, ms[j]));
        CHECK(std::abs(lhs - rhs) < 1e-11 * std::max(1.0, std::abs(lhs)));
      }
    }
  }
}

TEST_CASE("Fock Gram matrix reproduces the Shapovalov form up to level 3") {
  const LiouvilleParams p(1.0, 1.0);
  const auto labels = descendant_labels(3);
  const cplx alpha(0.6, 0.9);
  const cplx delta = conformal_weight(alpha, p.Q());
  const Eigen::MatrixXcd G = fock_gram(alpha, p, labels);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = 0; j < labels.size(); ++j) {
      cplx expected = 0.0;
      const auto& li = labels[i];
      const auto& lj = labels[j];
      if (li.nu.length() == lj.nu.length() && li.nutilde.length() == lj.nutilde.length()) {
        const auto& F = shapovalov_matrix(li.nu.length());
        const auto& Ft = shapovalov_matrix(li.nutilde.length());
        auto index = [](const ShapovalovMatrix& m, const YoungDiagram& d) {
          for (std::size_t k = 0; k < m.dim(); ++k)
            if (m.diagrams()[k] == d) return k;
          return m.dim();
        };
        expected = F.entry(index(F, li.nu), index(F, lj.nu)).evaluate(delta, p.central_charge()) *
                   Ft.entry(index(Ft, li.nutilde), index(Ft, lj.nutilde))
                       .evaluate(delta, p.central_charge());
      }
      const cplx got = G(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      CHECK(std::abs(got - expected) <= 1e-10 * std::max(1.0, std::abs(expected)));
    }
  }
}

#include "doctest.h"
#include "liouville/polynomial.hpp"

using namespace liouville;

TEST_CASE("arithmetic and evaluation") {
  const Poly2 d = Poly2::delta();
  const Poly2 c = Poly2::central_charge();
  const Poly2 p = d * d * mpq_class(3) + c * mpq_class(1, 2) - Poly2(mpq_class(1));
  CHECK(p.degree_delta() == 2);
  CHECK(p.evaluate(mpq_class(2), mpq_class(4)) == 13);
  CHECK(std::abs(p.evaluate(std::complex<double>(2.0, 0.0), 4.0) - 13.0) < 1e-14);
  CHECK((p - p).is_zero());
  CHECK(Poly2(mpq_class(0)).is_zero());
  const auto m = p.to_string_map();
  CHECK(m.at("2,0") == "3");
  CHECK(m.at("0,1") == "1/2");
  CHECK(m.at("0,0") == "-1");
  CHECK(p.to_string() == "3*D^2 + 1/2*c - 1");
  const NumericPoly2 np(p);
  CHECK(std::abs(np(2.0, 4.0) - 13.0) < 1e-14);
}

#include <stdexcept>

#include "doctest.h"
#include "liouville/io.hpp"

using namespace liouville;
using cplx = std::complex<double>;

TEST_CASE("complex parsing") {
  CHECK(parse_complex("1.5") == cplx(1.5, 0.0));
  CHECK(parse_complex("-2i") == cplx(0.0, -2.0));
  CHECK(parse_complex("0.3+0.1i") == cplx(0.3, 0.1));
  CHECK(parse_complex("1e-3-2.5i") == cplx(1e-3, -2.5));
  CHECK(parse_complex("2.5e+1+1e-2i") == cplx(25.0, 0.01));
  CHECK(parse_complex("i") == cplx(0.0, 1.0));
  CHECK(parse_complex("1-i") == cplx(1.0, -1.0));
  CHECK(parse_complex(" 2 + 3j ") == cplx(2.0, 3.0));
  CHECK_THROWS_AS(parse_complex(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex("1+2"), std::invalid_argument);
}

TEST_CASE("format round trip") {
  for (const cplx z : {cplx(0.1, 0.0), cplx(-1.25, 3.5), cplx(1e-300, -7e10)}) {
    CHECK(parse_complex(format_complex(z)) == z);
  }
}

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "liouville/partitions.hpp"

using namespace liouville;

namespace {

// Euler's pentagonal-number recurrence.
std::vector<unsigned long long> pentagonal_counts(int n) {
  std::vector<unsigned long long> p(n + 1, 0);
  p[0] = 1;
  for (int m = 1; m <= n; ++m) {
    long long acc = 0;
    for (int k = 1;; ++k) {
      const int g1 = k * (3 * k - 1) / 2;
      const int g2 = k * (3 * k + 1) / 2;
      if (g1 > m) break;
      const long long sign = (k % 2 == 1) ? 1 : -1;
      acc += sign * static_cast<long long>(p[m - g1]);
      if (g2 <= m) acc += sign * static_cast<long long>(p[m - g2]);
    }
    p[m] = static_cast<unsigned long long>(acc);
  }
  return p;
}

}  // namespace

TEST_CASE("small levels") {
  const auto d0 = young_diagrams(0);
  REQUIRE(d0.size() == 1);
  CHECK(d0[0].empty());
  CHECK(d0[0].length() == 0);
  const auto d1 = young_diagrams(1);
  REQUIRE(d1.size() == 1);
  CHECK(d1[0].to_string() == "1");
  std::vector<std::string> four;
  for (const auto& d : young_diagrams(4)) four.push_back(d.to_string());
  CHECK(four == std::vector<std::string>{"4", "3,1", "2,2", "2,1,1", "1,1,1,1"});
}

TEST_CASE("counts agree with the pentagonal recurrence") {
  const auto oracle = pentagonal_counts(20);
  CHECK(partition_count(0) == 1);
  CHECK(partition_count(5) == 7);
  CHECK(partition_count(10) == 42);
  for (int n = 0; n <= 20; ++n) {
    CAPTURE(n);
    CHECK(partition_count(n) == oracle[n]);
    const auto ds = young_diagrams(n);
    CHECK(ds.size() == oracle[n]);
    std::set<std::string> seen;
    for (const auto& d : ds) {
      int sum = 0;
      for (std::size_t i = 0; i < d.parts().size(); ++i) {
        CHECK(d.parts()[i] >= 1);
        if (i > 0) CHECK(d.parts()[i] <= d.parts()[i - 1]);
        sum += d.parts()[i];
      }
      CHECK(sum == n);
      CHECK(d.length() == n);
      seen.insert(d.to_string());
    }
    CHECK(seen.size() == ds.size());
  }
}

TEST_CASE("order is reverse lexicographic and stable") {
  for (int n = 1; n <= 12; ++n) {
    const auto ds = young_diagrams(n);
    for (std::size_t i = 1; i < ds.size(); ++i) {
      CHECK(ds[i - 1].parts() > ds[i].parts());
    }
    std::string a, b;
    for (const auto& d : ds) a += d.to_string() + ";";
    for (const auto& d : young_diagrams(n)) b += d.to_string() + ";";
    CHECK(a == b);
  }
}

TEST_CASE("serialization round trip and validation") {
  const YoungDiagram d({2, 1, 1});
  CHECK(d.to_string() == "2,1,1");
  CHECK(YoungDiagram::parse("2,1,1") == d);
  CHECK(YoungDiagram::parse("").empty());
  CHECK_THROWS_AS(YoungDiagram({1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(YoungDiagram({2, 0}), std::invalid_argument);
  CHECK_THROWS_AS(YoungDiagram::parse("2,x"), std::invalid_argument);
}

#include "liouville/quadrature.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace liouville {

namespace {

GaussLegendreRule build_rule(int n) {
  // Boost returns the non-negative zeros in increasing order.
  const std::vector<double> half = boost::math::legendre_p_zeros<double>(n);
  GaussLegendreRule rule;
  auto weight = [n](double x) {
    const double dp = boost::math::legendre_p_prime(n, x);
    return 2.0 / ((1.0 - x * x) * dp * dp);
  };
  for (auto it = half.rbegin(); it != half.rend(); ++it) {
    if (*it == 0.0) continue;
    rule.nodes.push_back(-*it);
    rule.weights.push_back(weight(*it));
  }
  for (double x : half) {
    rule.nodes.push_back(x);
    rule.weights.push_back(weight(x));
  }
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre rule needs n >= 1");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussLegendreRule>(build_rule(n));
  return *slot;
}

}  // namespace liouville

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <type_traits>
#include <utility>
#include <vector>

namespace liouville {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached rule with `n` points; safe to call concurrently.
const GaussLegendreRule& gauss_legendre(int n);

/// Neumaier summation for double or std::complex<double>.
template <class T>
class CompensatedSum {
 public:
  void add(const T& x) {
    if constexpr (std::is_floating_point_v<T>) {
      add_real(sum_, comp_, x);
    } else {
      double sr = sum_.real(), cr = comp_.real();
      double si = sum_.imag(), ci = comp_.imag();
      add_real(sr, cr, x.real());
      add_real(si, ci, x.imag());
      sum_ = T(sr, si);
      comp_ = T(cr, ci);
    }
  }
  T value() const { return sum_ + comp_; }

 private:
  static void add_real(double& s, double& c, double x) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  }
  T sum_{};
  T comp_{};
};

template <class F>
auto integrate_panel(F&& f, double a, double b, const GaussLegendreRule& rule) {
  using R = std::decay_t<decltype(f(a))>;
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  R acc{};
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    acc += rule.weights[k] * f(mid + half * rule.nodes[k]);
  }
  return acc * half;
}

namespace detail {

template <class F, class R>
void adaptive_step(F& f, double a, double b, R whole, double tol, double noise, int depth,
                   const GaussLegendreRule& rule, CompensatedSum<R>& out) {
  const double m = 0.5 * (a + b);
  const R left = integrate_panel(f, a, m, rule);
  const R right = integrate_panel(f, m, b, rule);
  const R both = left + right;
  if (depth <= 0 || std::abs(both - whole) <= std::max(tol, noise * (b - a))) {
    out.add(both);
    return;
  }
  adaptive_step(f, a, m, left, 0.5 * tol, noise, depth - 1, rule, out);
  adaptive_step(f, m, b, right, 0.5 * tol, noise, depth - 1, rule, out);
}

}  // namespace detail

/// Adaptive bisection with a fixed Gauss-Legendre rule per panel: a panel is
/// accepted when the one-panel and two-half-panel estimates agree to `tol`,
/// or to `noise` times the panel width once the difference is rounding noise.
template <class F>
auto integrate_adaptive(F&& f, double a, double b, double tol, int max_depth = 30,
                        int points = 20, double noise = 0.0) {
  using R = std::decay_t<decltype(f(a))>;
  const GaussLegendreRule& rule = gauss_legendre(points);
  CompensatedSum<R> out;
  const R whole = integrate_panel(f, a, b, rule);
  detail::adaptive_step(f, a, b, whole, tol, noise, max_depth, rule, out);
  return out.value();
}

}  // namespace liouville

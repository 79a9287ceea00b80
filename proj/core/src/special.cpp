#include "liouville/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "liouville/quadrature.hpp"

namespace liouville {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos coefficients, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool near_integer(cplx z, long& k) {
  const double r = std::round(z.real());
  const double scale = std::max(1.0, std::abs(z));
  if (std::abs(z.imag()) <= 1e-13 * scale && std::abs(z.real() - r) <= 1e-13 * scale) {
    k = static_cast<long>(r);
    return true;
  }
  return false;
}

cplx wrap_imag(cplx w) {
  double im = std::remainder(w.imag(), 2.0 * kPi);
  if (im <= -kPi) im += 2.0 * kPi;
  return {w.real(), im};
}

cplx lanczos_log_gamma(cplx z) {
  z -= 1.0;
  cplx x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    x += kLanczos[i] / (z + static_cast<double>(i));
  }
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// ln sin(pi z) without overflow for large |Im z|; branch arbitrary.
cplx log_sin_pi(cplx z) {
  const cplx i(0.0, 1.0);
  if (z.imag() >= 0.0) {
    const cplx w = std::exp(2.0 * i * kPi * z);
    return -i * kPi * z + std::log((w - 1.0) / (2.0 * i));
  }
  const cplx w = std::exp(-2.0 * i * kPi * z);
  return i * kPi * z + std::log((1.0 - w) / (2.0 * i));
}

// Integrand of ln Upsilon after division by t.
struct UpsilonIntegrand {
  cplx a;       // Q/2 - z
  cplx a2;
  double p;     // gamma/4
  double q;     // 1/gamma
  double half_q_sum;  // Q/2 = p + q
  double t_small;
  cplx c2;      // t^2 coefficient of g(t)/a^2 - 1
  cplx c4;      // t^4 coefficient

  UpsilonIntegrand(cplx z, double gamma) {
    p = gamma / 4.0;
    q = 1.0 / gamma;
    half_q_sum = p + q;
    a = half_q_sum - z;
    a2 = a * a;
    t_small = std::min(1e-3, 0.05 / std::max(1.0, std::abs(a)));
    const cplx u1 = a2 / 12.0;
    const cplx u2 = a2 * a2 / 360.0;
    const double s1 = (p * p + q * q) / 6.0;
    const double s2 = (std::pow(p, 4) + std::pow(q, 4)) / 120.0 + p * p * q * q / 36.0;
    c2 = u1 - s1;
    c4 = u2 - s2 - s1 * c2;
  }

  cplx operator()(double t) const {
    if (t < t_small) {
      // a^2 (e^{-t} - 1)/t - (g(t) - a^2)/t with g expanded to O(t^4).
      const double em1 = std::expm1(-t) / t;
      return a2 * em1 - a2 * t * (c2 + c4 * t * t);
    }
    const cplx sh = std::sinh(0.5 * a * t);
    const double den = std::expm1(-2.0 * p * t) * std::expm1(-2.0 * q * t);
    const cplx g = 4.0 * sh * sh * std::exp(-half_q_sum * t) / den;
    return (a2 * std::exp(-t) - g) / t;
  }
};

}  // namespace

cplx log_gamma(cplx z) {
  long k = 0;
  if (near_integer(z, k) && k <= 0) {
    throw PoleError("log_gamma: pole at non-positive integer", z);
  }
  if (z.real() >= 0.5) {
    return wrap_imag(lanczos_log_gamma(z));
  }
  return wrap_imag(std::log(kPi) - log_sin_pi(z) - lanczos_log_gamma(1.0 - z));
}

cplx log_ell(cplx z) {
  long k = 0;
  if (near_integer(z, k)) {
    if (k <= 0) throw PoleError("ell: pole of Gamma(z)", z);
    throw PoleError("ell: zero of ell (pole of its logarithm)", z);
  }
  return log_gamma(z) - log_gamma(1.0 - z);
}

cplx ell(cplx z) {
  long k = 0;
  if (near_integer(z, k)) {
    if (k <= 0) throw PoleError("ell: pole of Gamma(z)", z);
    return 0.0;
  }
  return std::exp(log_gamma(z) - log_gamma(1.0 - z));
}

bool on_upsilon_zero_lattice(cplx z, const LiouvilleParams& params) {
  const double g2 = params.gamma() / 2.0;
  const double tg = 2.0 / params.gamma();
  const double scale = std::max(1.0, std::abs(z));
  const double tol = 1e-12 * scale;
  if (std::abs(z.imag()) > tol) return false;
  auto hits = [&](double w) {
    // w = m g2 + n tg with m, n >= 0
    if (w < -tol) return false;
    const long mmax = static_cast<long>(std::floor((w + tol) / g2));
    for (long m = 0; m <= mmax; ++m) {
      const double rest = (w - m * g2) / tg;
      const double n = std::round(rest);
      if (n >= 0.0 && std::abs(rest - n) * tg <= tol) return true;
    }
    return false;
  };
  return hits(-z.real()) || hits(z.real() - params.Q());
}

cplx log_upsilon_strip(cplx z, const LiouvilleParams& params) {
  const double Q = params.Q();
  if (!(z.real() > 0.0 && z.real() < Q)) {
    throw ConditionError("log_upsilon_strip: requires 0 < Re z < Q");
  }
  const UpsilonIntegrand f(z, params.gamma());
  const double decay = 0.5 * Q - std::abs(f.a.real());
  const double scale = std::max(1.0, std::abs(f.a2));
  const double tol = 1e-14 * scale;
  const double t_tail_gauss = std::log(scale * 1e16);
  const double t_tail_sinh = std::log(4e16 * scale) / decay;
  const double T = std::clamp(std::max(t_tail_gauss, t_tail_sinh), 2.0, 5000.0);

  // Rounding in the integrand is a few ulps of |a|^2 / t, from the cancelling
  // terms; never bisect below that.
  const double noise = 64.0 * std::numeric_limits<double>::epsilon() * scale;

  CompensatedSum<cplx> sum;
  // Dyadic panels on (0, 1] so the noise floor can follow the 1/t growth.
  const int levels = static_cast<int>(std::ceil(std::log2(1.0 / f.t_small))) + 1;
  double hi = std::ldexp(1.0, -levels);
  sum.add(integrate_adaptive(f, 0.0, hi, tol * 0.1 / (levels + 1), 40, 20, noise / hi));
  for (int k = levels - 1; k >= 0; --k) {
    const double lo = hi;
    hi = std::ldexp(1.0, -k);
    sum.add(integrate_adaptive(f, lo, hi, tol * 0.1 / (levels + 1), 40, 20, noise / lo));
  }
  // Oscillation period in t is 2 pi / |Im a|; keep panels below half of it.
  const double width = std::min(1.0, kPi / (1.0 + std::abs(f.a.imag())));
  const int panels = static_cast<int>(std::ceil((T - 1.0) / width));
  const double h = (T - 1.0) / panels;
  const double panel_tol = tol / panels;
  for (int k = 0; k < panels; ++k) {
    const double lo = 1.0 + k * h;
    sum.add(integrate_adaptive(f, lo, lo + h, panel_tol, 30, 20, noise));
  }
  return sum.value();
}

LogUpsilon log_upsilon(cplx z, const LiouvilleParams& params) {
  if (on_upsilon_zero_lattice(z, params)) {
    return {cplx(-std::numeric_limits<double>::infinity(), 0.0), true};
  }
  const double gamma = params.gamma();
  const double Q = params.Q();
  const bool small_shift = gamma <= std::numbers::sqrt2;
  const double s = small_shift ? gamma / 2.0 : 2.0 / gamma;
  const double log_g2 = std::log(gamma / 2.0);
  // ln of the multiplier k(w) in Upsilon(w + s) = k(w) Upsilon(w).
  auto log_k = [&](cplx w) -> cplx {
    if (small_shift) {
      return log_ell(0.5 * gamma * w) + (1.0 - gamma * w) * log_g2;
    }
    return log_ell(2.0 * w / gamma) + (4.0 * w / gamma - 1.0) * log_g2;
  };
  const double lo = 0.5 * Q - 0.5 * s;
  const double hi = 0.5 * Q + 0.5 * s;
  cplx acc = 0.0;
  while (z.real() < lo) {
    acc -= log_k(z);
    z += s;
  }
  while (z.real() > hi) {
    z -= s;
    acc += log_k(z);
  }
  return {acc + log_upsilon_strip(z, params), false};
}

cplx upsilon(cplx z, const LiouvilleParams& params) {
  const LogUpsilon lu = log_upsilon(z, params);
  if (lu.zero) return 0.0;
  return std::exp(lu.value);
}

double upsilon_prime_zero(const LiouvilleParams& params) {
  return std::exp(log_upsilon_strip(params.gamma() / 2.0, params).real());
}

DozzFormula::DozzFormula(const LiouvilleParams& params) : params_(params) {
  const double g = params.gamma();
  const double base = kPi * params.mu() * ell(g * g / 4.0).real() *
                      std::pow(g / 2.0, 2.0 - g * g / 2.0);
  log_base_ = std::log(base);
  log_upsilon_prime0_ = std::log(upsilon_prime_zero(params));
}

cplx DozzFormula::log_value(cplx a1, cplx a2, cplx a3) const {
  const double Q = params_.Q();
  const cplx abar = a1 + a2 + a3;
  const std::array<cplx, 4> den = {0.5 * abar - Q, 0.5 * abar - a1, 0.5 * abar - a2,
                                   0.5 * abar - a3};
  cplx acc = (2.0 * Q - abar) / params_.gamma() * log_base_ + log_upsilon_prime0_;
  for (const cplx& d : den) {
    const LogUpsilon lu = log_upsilon(d, params_);
    if (lu.zero) {
      std::ostringstream os;
      os << "DOZZ pole: Upsilon vanishes at argument " << d;
      throw PoleError(os.str(), d);
    }
    acc -= lu.value;
  }
  for (const cplx& a : {a1, a2, a3}) {
    const LogUpsilon lu = log_upsilon(a, params_);
    if (lu.zero) return cplx(-std::numeric_limits<double>::infinity(), 0.0);
    acc += lu.value;
  }
  return wrap_imag(acc);
}

cplx DozzFormula::operator()(cplx a1, cplx a2, cplx a3) const {
  const cplx lv = log_value(a1, a2, a3);
  if (std::isinf(lv.real()) && lv.real() < 0) return 0.0;
  cplx v = std::exp(lv);
  if (a1.imag() == 0.0 && a2.imag() == 0.0 && a3.imag() == 0.0) {
    v = cplx(v.real(), 0.0);
  }
  return v;
}

cplx dozz(cplx a1, cplx a2, cplx a3, const LiouvilleParams& params) {
  return DozzFormula(params)(a1, a2, a3);
}

}  // namespace liouville

#include "liouville/fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace liouville {

namespace {

constexpr cplx kI(0.0, 1.0);

int x_slot(int n) { return 2 * (n - 1); }
int y_slot(int n) { return 2 * (n - 1) + 1; }

void check_mode(int n) {
  if (n < 1 || n > kMaxFockMode) {
    throw std::out_of_range("Fock mode index outside [1, kMaxFockMode]");
  }
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Normalized Hermite coefficients of x^k: x^k = sum_j coeff_j psi_j.
const std::vector<std::vector<std::pair<int, double>>>& monomial_to_hermite() {
  static const auto table = [] {
    constexpr int kMaxDegree = 64;
    std::vector<std::vector<std::pair<int, double>>> t(kMaxDegree + 1);
    for (int k = 0; k <= kMaxDegree; ++k) {
      for (int j = k; j >= 0; j -= 2) {
        const int m = (k - j) / 2;
        const double c = std::exp(std::lgamma(k + 1.0) - std::lgamma(j + 1.0) -
                                  std::lgamma(m + 1.0) - m * std::log(2.0) +
                                  0.5 * std::lgamma(j + 1.0));
        t[k].emplace_back(j, c);
      }
    }
    return t;
  }();
  return table;
}

// phi_n or phi_{-n} times the state, n > 0.
FockPolynomial times_phi(int n, bool conjugate, const FockPolynomial& s) {
  const double norm = 1.0 / (2.0 * std::sqrt(static_cast<double>(n)));
  const cplx iy = conjugate ? -kI : kI;
  return (s.times_x(n) + s.times_y(n) * iy) * norm;
}

// d_n (conjugate = false) or d_{-n} (conjugate = true), n > 0.
FockPolynomial d_mode(int n, bool conjugate, const FockPolynomial& s) {
  const double norm = std::sqrt(static_cast<double>(n));
  const cplx iy = conjugate ? kI : -kI;
  return (s.d_x(n) + s.d_y(n) * iy) * norm;
}

// sum_h a_h conj(b_h) over a common orthonormal Hermite basis.
cplx hermite_dot(const FockPolynomial::Terms& a, const FockPolynomial::Terms& b) {
  cplx acc = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      acc += ia->second * std::conj(ib->second);
      ++ia;
      ++ib;
    }
  }
  return acc;
}

}  // namespace

FockPolynomial FockPolynomial::constant(cplx value) {
  FockPolynomial p;
  p.add_term(Key{}, value);
  return p;
}

FockPolynomial FockPolynomial::x(int n) {
  check_mode(n);
  Key k{};
  k[x_slot(n)] = 1;
  FockPolynomial p;
  p.add_term(k, 1.0);
  return p;
}

FockPolynomial FockPolynomial::y(int n) {
  check_mode(n);
  Key k{};
  k[y_slot(n)] = 1;
  FockPolynomial p;
  p.add_term(k, 1.0);
  return p;
}

FockPolynomial FockPolynomial::phi(int n) {
  if (n == 0) throw std::invalid_argument("phi_0 is not a Fock mode");
  return times_phi(std::abs(n), n < 0, one());
}

int FockPolynomial::n_max() const {
  int top = 0;
  for (const auto& [key, coeff] : terms_) {
    for (int slot = 2 * kMaxFockMode - 1; slot >= 0; --slot) {
      if (key[slot] != 0) {
        top = std::max(top, slot / 2 + 1);
        break;
      }
    }
  }
  return top;
}

cplx FockPolynomial::coefficient(const Key& key) const {
  const auto it = terms_.find(key);
  return it == terms_.end() ? cplx(0.0) : it->second;
}

double FockPolynomial::max_abs() const {
  double m = 0.0;
  for (const auto& [key, coeff] : terms_) m = std::max(m, std::abs(coeff));
  return m;
}

void FockPolynomial::add_term(const Key& key, cplx coeff) {
  if (coeff == 0.0) return;
  auto [it, inserted] = terms_.emplace(key, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0.0) terms_.erase(it);
  }
}

FockPolynomial& FockPolynomial::operator+=(const FockPolynomial& other) {
  for (const auto& [key, coeff] : other.terms_) add_term(key, coeff);
  return *this;
}

FockPolynomial& FockPolynomial::operator-=(const FockPolynomial& other) {
  for (const auto& [key, coeff] : other.terms_) add_term(key, -coeff);
  return *this;
}

FockPolynomial& FockPolynomial::operator*=(cplx s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, coeff] : terms_) coeff *= s;
  return *this;
}

FockPolynomial operator*(const FockPolynomial& a, const FockPolynomial& b) {
  FockPolynomial out;
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      FockPolynomial::Key k{};
      for (std::size_t s = 0; s < k.size(); ++s) k[s] = static_cast<std::uint8_t>(ka[s] + kb[s]);
      out.add_term(k, ca * cb);
    }
  }
  return out;
}

FockPolynomial FockPolynomial::times_var(int slot) const {
  FockPolynomial out;
  for (const auto& [key, coeff] : terms_) {
    Key k = key;
    if (k[slot] == 255) throw std::overflow_error("Fock exponent overflow");
    ++k[slot];
    out.terms_.emplace(k, coeff);
  }
  return out;
}

FockPolynomial FockPolynomial::d_var(int slot) const {
  FockPolynomial out;
  for (const auto& [key, coeff] : terms_) {
    if (key[slot] == 0) continue;
    Key k = key;
    const double e = k[slot];
    --k[slot];
    out.add_term(k, coeff * e);
  }
  return out;
}

FockPolynomial FockPolynomial::times_x(int n) const {
  check_mode(n);
  return times_var(x_slot(n));
}
FockPolynomial FockPolynomial::times_y(int n) const {
  check_mode(n);
  return times_var(y_slot(n));
}
FockPolynomial FockPolynomial::d_x(int n) const {
  check_mode(n);
  return d_var(x_slot(n));
}
FockPolynomial FockPolynomial::d_y(int n) const {
  check_mode(n);
  return d_var(y_slot(n));
}

cplx FockPolynomial::evaluate(const std::vector<double>& xs, const std::vector<double>& ys) const {
  cplx acc = 0.0;
  for (const auto& [key, coeff] : terms_) {
    cplx term = coeff;
    for (int n = 1; n <= kMaxFockMode; ++n) {
      const int ex = key[x_slot(n)];
      const int ey = key[y_slot(n)];
      if (ex > 0) term *= std::pow(xs.at(n - 1), ex);
      if (ey > 0) term *= std::pow(ys.at(n - 1), ey);
    }
    acc += term;
  }
  return acc;
}

FockPolynomial apply_A(int n, const FockPolynomial& state, ModeFamily family) {
  if (n == 0) throw std::invalid_argument("apply_A: n must be non-zero");
  const int m = std::abs(n);
  const bool twin = family == ModeFamily::twin;
  if (n > 0) {
    // Derivatives only lower degree; nothing to do above the top mode.
    if (m > state.n_max()) return {};
    return d_mode(m, twin, state) * (0.5 * kI);
  }
  FockPolynomial out = times_phi(m, twin, state) * (-2.0 * m);
  if (m <= state.n_max()) out += d_mode(m, !twin, state);
  return out * (0.5 * kI);
}

FockPolynomial apply_L(int n, cplx alpha, const LiouvilleParams& params,
                       const FockPolynomial& state, ModeFamily family) {
  const double Q = params.Q();
  if (n == 0) {
    FockPolynomial out = state * conformal_weight(alpha, Q);
    for (int m = 1; m <= state.n_max(); ++m) {
      const FockPolynomial am = apply_A(m, state, family);
      if (am.is_zero()) continue;
      out += apply_A(-m, am, family) * 2.0;
    }
    return out;
  }
  FockPolynomial out = apply_A(n, state, family) * (kI * (alpha - Q - n * Q));
  const int span = state.n_max() + std::abs(n);
  for (int m = -span; m <= span; ++m) {
    if (m == 0 || m == n) continue;
    const FockPolynomial am = apply_A(m, state, family);
    if (am.is_zero()) continue;
    out += apply_A(n - m, am, family);
  }
  return out;
}

FockPolynomial descendant_poly(cplx alpha, const LiouvilleParams& params, const YoungDiagram& nu,
                               const YoungDiagram& nutilde) {
  if (nu.length() + nutilde.length() > kMaxFockMode) {
    throw std::out_of_range("descendant_poly: level exceeds the Fock mode budget");
  }
  FockPolynomial state = FockPolynomial::one();
  for (int part : nutilde.parts()) state = apply_L(-part, alpha, params, state, ModeFamily::twin);
  for (int part : nu.parts()) state = apply_L(-part, alpha, params, state);
  return state;
}

FockPolynomial::Terms hermite_coefficients(const FockPolynomial& p) {
  const auto& table = monomial_to_hermite();
  FockPolynomial out;
  for (const auto& [key, coeff] : p.terms()) {
    std::vector<int> slots;
    for (int s = 0; s < 2 * kMaxFockMode; ++s) {
      if (key[s] != 0) slots.push_back(s);
    }
    // Tensor product of the per-variable expansions.
    std::vector<std::pair<FockPolynomial::Key, cplx>> partial{{FockPolynomial::Key{}, coeff}};
    for (int s : slots) {
      if (key[s] >= table.size()) throw std::overflow_error("Hermite table too small");
      std::vector<std::pair<FockPolynomial::Key, cplx>> next;
      next.reserve(partial.size() * table[key[s]].size());
      for (const auto& [k, c] : partial) {
        for (const auto& [j, w] : table[key[s]]) {
          FockPolynomial::Key kk = k;
          kk[s] = static_cast<std::uint8_t>(j);
          next.emplace_back(kk, c * w);
        }
      }
      partial.swap(next);
    }
    for (const auto& [k, c] : partial) out.add_term(k, c);
  }
  return out.terms();
}

cplx fock_inner(const FockPolynomial& a, const FockPolynomial& b) {
  return hermite_dot(hermite_coefficients(a), hermite_coefficients(b));
}

FockPolynomial apply_number_operator(const FockPolynomial& state) {
  FockPolynomial out;
  for (int n = 1; n <= state.n_max(); ++n) {
    const FockPolynomial dx = state.d_x(n);
    const FockPolynomial dy = state.d_y(n);
    FockPolynomial part = dx.times_x(n) - dx.d_x(n) + dy.times_y(n) - dy.d_y(n);
    out += part * static_cast<double>(n);
  }
  return out;
}

FockPolynomial HermiteState::polynomial() const {
  auto hermite = [](int deg, int n, bool is_x) {
    // He_deg(v) = sum_m (-1)^m deg! / (m! (deg-2m)! 2^m) v^(deg-2m), normalized.
    FockPolynomial p;
    const double norm = 1.0 / std::sqrt(factorial(deg));
    for (int m = 0; 2 * m <= deg; ++m) {
      FockPolynomial::Key k{};
      k[is_x ? x_slot(n) : y_slot(n)] = static_cast<std::uint8_t>(deg - 2 * m);
      const double c = (m % 2 == 0 ? 1.0 : -1.0) * factorial(deg) /
                       (factorial(m) * factorial(deg - 2 * m) * std::pow(2.0, m));
      p.add_term(k, c * norm);
    }
    return p;
  };
  FockPolynomial out = FockPolynomial::one();
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] > 0) out = out * hermite(k[i], static_cast<int>(i) + 1, true);
  }
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (l[i] > 0) out = out * hermite(l[i], static_cast<int>(i) + 1, false);
  }
  return out;
}

int HermiteState::eigenvalue() const {
  int total = 0;
  for (std::size_t i = 0; i < k.size(); ++i) total += static_cast<int>(i + 1) * k[i];
  for (std::size_t i = 0; i < l.size(); ++i) total += static_cast<int>(i + 1) * l[i];
  return total;
}

std::vector<DescendantLabel> descendant_labels(int total_level) {
  std::vector<DescendantLabel> out;
  for (int a = 0; a <= total_level; ++a) {
    for (int b = 0; a + b <= total_level; ++b) {
      for (const auto& nu : young_diagrams(a)) {
        for (const auto& nut : young_diagrams(b)) out.push_back({nu, nut});
      }
    }
  }
  return out;
}

Eigen::MatrixXcd fock_gram(cplx alpha, const LiouvilleParams& params,
                           const std::vector<DescendantLabel>& labels) {
  const cplx dual = 2.0 * params.Q() - std::conj(alpha);
  const auto n = static_cast<Eigen::Index>(labels.size());
  std::vector<FockPolynomial::Terms> ket(labels.size()), bra(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    ket[i] = hermite_coefficients(descendant_poly(alpha, params, labels[i].nu, labels[i].nutilde));
    bra[i] = hermite_coefficients(descendant_poly(dual, params, labels[i].nu, labels[i].nutilde));
  }
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = hermite_dot(ket[j], bra[i]);
  }
  return g;
}

}  // namespace liouville

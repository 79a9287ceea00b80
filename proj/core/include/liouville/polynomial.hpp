#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace liouville {

/// Polynomial in the two commuting indeterminates (Delta, c) with exact
/// rational coefficients. Zero coefficients are never stored.
class Poly2 {
 public:
  using Exponent = std::pair<int, int>;  // (power of Delta, power of c)
  using Terms = std::map<Exponent, mpq_class>;

  Poly2() = default;
  Poly2(const mpq_class& constant);  // NOLINT(google-explicit-constructor)
  static Poly2 delta();
  static Poly2 central_charge();

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  int degree_delta() const;

  Poly2& operator+=(const Poly2& other);
  Poly2& operator-=(const Poly2& other);
  Poly2& operator*=(const mpq_class& s);
  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
  friend Poly2 operator*(Poly2 a, const mpq_class& s) { return a *= s; }
  friend Poly2 operator*(const Poly2& a, const Poly2& b);
  friend bool operator==(const Poly2& a, const Poly2& b) { return a.terms_ == b.terms_; }

  mpq_class evaluate(const mpq_class& delta, const mpq_class& c) const;
  std::complex<double> evaluate(std::complex<double> delta, double c) const;

  /// Map of "i,j" exponent keys to "num/den" coefficient strings.
  std::map<std::string, std::string> to_string_map() const;
  /// Human-readable form, e.g. "8*D^2 + 4*D".
  std::string to_string() const;

 private:
  void add_term(const Exponent& e, const mpq_class& coeff);
  Terms terms_;
};

/// Coefficient table of a Poly2 converted to binary64, for fast repeated
/// numeric evaluation.
class NumericPoly2 {
 public:
  NumericPoly2() = default;
  explicit NumericPoly2(const Poly2& p);
  std::complex<double> operator()(std::complex<double> delta, double c) const;
  double operator()(double delta, double c) const;

 private:
  struct Term {
    int i;
    int j;
    double coeff;
  };
  std::vector<Term> terms_;
};

}  // namespace liouville

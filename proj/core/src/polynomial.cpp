#include "liouville/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace liouville {

namespace {

template <class T>
T int_pow(T base, int e) {
  T out(1);
  for (int k = 0; k < e; ++k) out *= base;
  return out;
}

}  // namespace

Poly2::Poly2(const mpq_class& constant) {
  if (constant != 0) terms_.emplace(Exponent{0, 0}, constant);
}

Poly2 Poly2::delta() {
  Poly2 p;
  p.terms_.emplace(Exponent{1, 0}, mpq_class(1));
  return p;
}

Poly2 Poly2::central_charge() {
  Poly2 p;
  p.terms_.emplace(Exponent{0, 1}, mpq_class(1));
  return p;
}

int Poly2::degree_delta() const {
  int d = -1;
  for (const auto& [e, coeff] : terms_) d = std::max(d, e.first);
  return d;
}

void Poly2::add_term(const Exponent& e, const mpq_class& coeff) {
  if (coeff == 0) return;
  mpq_class c(coeff);
  c.canonicalize();
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly2& Poly2::operator+=(const Poly2& other) {
  for (const auto& [e, coeff] : other.terms_) add_term(e, coeff);
  return *this;
}

Poly2& Poly2::operator-=(const Poly2& other) {
  for (const auto& [e, coeff] : other.terms_) add_term(e, -coeff);
  return *this;
}

Poly2& Poly2::operator*=(const mpq_class& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= s;
  return *this;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
  Poly2 out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      out.add_term({ea.first + eb.first, ea.second + eb.second}, mpq_class(ca * cb));
    }
  }
  return out;
}

mpq_class Poly2::evaluate(const mpq_class& delta, const mpq_class& c) const {
  mpq_class acc = 0;
  for (const auto& [e, coeff] : terms_) {
    acc += coeff * int_pow(delta, e.first) * int_pow(c, e.second);
  }
  return acc;
}

std::complex<double> Poly2::evaluate(std::complex<double> delta, double c) const {
  return NumericPoly2(*this)(delta, c);
}

std::map<std::string, std::string> Poly2::to_string_map() const {
  std::map<std::string, std::string> out;
  for (const auto& [e, coeff] : terms_) {
    out.emplace(std::to_string(e.first) + "," + std::to_string(e.second), coeff.get_str());
  }
  return out;
}

std::string Poly2::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, coeff] = *it;
    mpq_class mag = abs(coeff);
    if (first) {
      if (coeff < 0) os << "-";
    } else {
      os << (coeff < 0 ? " - " : " + ");
    }
    first = false;
    const bool bare = e.first == 0 && e.second == 0;
    if (mag != 1 || bare) {
      os << mag.get_str();
      if (!bare) os << "*";
    }
    bool need_star = false;
    if (e.first > 0) {
      os << "D";
      if (e.first > 1) os << "^" << e.first;
      need_star = true;
    }
    if (e.second > 0) {
      if (need_star) os << "*";
      os << "c";
      if (e.second > 1) os << "^" << e.second;
    }
  }
  return os.str();
}

NumericPoly2::NumericPoly2(const Poly2& p) {
  terms_.reserve(p.terms().size());
  for (const auto& [e, coeff] : p.terms()) {
    terms_.push_back({e.first, e.second, coeff.get_d()});
  }
}

std::complex<double> NumericPoly2::operator()(std::complex<double> delta, double c) const {
  std::complex<double> acc = 0.0;
  for (const Term& t : terms_) {
    acc += t.coeff * int_pow(delta, t.i) * int_pow(c, t.j);
  }
  return acc;
}

double NumericPoly2::operator()(double delta, double c) const {
  double acc = 0.0;
  for (const Term& t : terms_) {
    acc += t.coeff * int_pow(delta, t.i) * int_pow(c, t.j);
  }
  return acc;
}

}  // namespace liouville

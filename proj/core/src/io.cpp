#include "liouville/io.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace liouville {

namespace {

double parse_real(std::string_view s, std::string_view whole) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("malformed complex number: '" + std::string(whole) + "'");
  }
  return value;
}

// "" or "+" -> 1, "-" -> -1, otherwise a number.
double parse_imag_coefficient(std::string_view s, std::string_view whole) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  return parse_real(s, whole);
}

}  // namespace

std::complex<double> parse_complex(std::string_view text) {
  std::string compact;
  for (char ch : text) {
    if (ch != ' ' && ch != '\t') compact += ch;
  }
  const std::string_view s(compact);
  if (s.empty()) throw std::invalid_argument("empty complex number");
  if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, text), 0.0};

  const std::string_view body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not the leading one and not an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, parse_imag_coefficient(body, text)};
  return {parse_real(body.substr(0, split), text),
          parse_imag_coefficient(body.substr(split), text)};
}

std::string format_complex(std::complex<double> z) {
  char buf[64];
  if (z.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.17g", z.real());
  } else {
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  }
  return buf;
}

}  // namespace liouville

#pragma once

#include <complex>
#include <string>
#include <string_view>

namespace liouville {

/// Parses "1.5", "-2i", "0.3+0.1i", "1e-3-2.5i" (a trailing 'j' is accepted
/// too). Throws std::invalid_argument on malformed input.
std::complex<double> parse_complex(std::string_view text);

/// Inverse of parse_complex with round-trip precision.
std::string format_complex(std::complex<double> z);

}  // namespace liouville

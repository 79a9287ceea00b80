#pragma once

#include <complex>

#include "liouville/params.hpp"

namespace liouville {

/// ln Gamma(z) with the imaginary part reduced to (-pi, pi].
/// Lanczos approximation for Re z >= 1/2, reflection formula otherwise.
/// Throws PoleError at z = 0, -1, -2, ...
cplx log_gamma(cplx z);

/// l(z) = Gamma(z) / Gamma(1 - z). Exact zero at z = 1, 2, ...;
/// PoleError at z = 0, -1, -2, ...
cplx ell(cplx z);

/// ln l(z); PoleError on either lattice (the log of zero is a pole too).
cplx log_ell(cplx z);

/// True when z lies on the zero set of Upsilon_{gamma/2}:
/// -(gamma/2)N - (2/gamma)N  or  Q + (gamma/2)N + (2/gamma)N.
bool on_upsilon_zero_lattice(cplx z, const LiouvilleParams& params);

/// Raw integral representation of ln Upsilon, valid for 0 < Re z < Q.
cplx log_upsilon_strip(cplx z, const LiouvilleParams& params);

struct LogUpsilon {
  cplx value;          ///< ln Upsilon(z); meaningless when `zero` is set
  bool zero = false;   ///< z is on the zero lattice
};

/// ln Upsilon(z) for any z: translated into a central window of the strip
/// with the shift relations, then integrated.
LogUpsilon log_upsilon(cplx z, const LiouvilleParams& params);

/// Upsilon_{gamma/2}(z); returns exactly 0 on the zero lattice.
cplx upsilon(cplx z, const LiouvilleParams& params);

/// Upsilon'(0), equal to Upsilon(gamma/2) by the z -> 0 limit of the
/// gamma/2 shift relation.
double upsilon_prime_zero(const LiouvilleParams& params);

/// The DOZZ structure constant. Caches the parameter-only factors so that
/// repeated evaluation (quadrature over the spectrum line) is cheap.
class DozzFormula {
 public:
  explicit DozzFormula(const LiouvilleParams& params);

  /// Throws PoleError when a denominator Upsilon vanishes; the location
  /// reported is the offending Upsilon argument.
  cplx operator()(cplx a1, cplx a2, cplx a3) const;

  /// ln C with the imaginary part reduced to (-pi, pi].
  cplx log_value(cplx a1, cplx a2, cplx a3) const;

  const LiouvilleParams& params() const noexcept { return params_; }

 private:
  LiouvilleParams params_;
  double log_base_;             // ln(pi mu l(gamma^2/4) (gamma/2)^(2 - gamma^2/2))
  double log_upsilon_prime0_;
};

cplx dozz(cplx a1, cplx a2, cplx a3, const LiouvilleParams& params);

}  // namespace liouville

#pragma once

#include <cmath>
#include <complex>

#include "liouville/error.hpp"

namespace liouville {

using cplx = std::complex<double>;

/// Coupling data of the theory. Q and the central charge are derived.
class LiouvilleParams {
 public:
  LiouvilleParams(double gamma, double mu) : gamma_(gamma), mu_(mu) {
    if (!(gamma > 0.0 && gamma < 2.0)) {
      throw ConditionError("gamma must lie in (0, 2)");
    }
    if (!(mu > 0.0)) {
      throw ConditionError("mu must be positive");
    }
  }

  double gamma() const noexcept { return gamma_; }
  double mu() const noexcept { return mu_; }
  double Q() const noexcept { return 2.0 / gamma_ + gamma_ / 2.0; }
  double central_charge() const noexcept { return 1.0 + 6.0 * Q() * Q(); }

  LiouvilleParams with_mu(double mu) const { return {gamma_, mu}; }

 private:
  double gamma_;
  double mu_;
};

/// Delta_alpha = (alpha/2)(Q - alpha/2).
inline cplx conformal_weight(cplx alpha, double Q) {
  return 0.5 * alpha * (Q - 0.5 * alpha);
}

inline double conformal_weight(double alpha, double Q) {
  return 0.5 * alpha * (Q - 0.5 * alpha);
}

/// Weight of the spectrum-line state alpha = Q + iP.
inline double spectrum_weight(double P, double Q) {
  return 0.25 * (Q * Q + P * P);
}

struct ConformalWeight {
  cplx alpha;
  cplx delta;

  ConformalWeight(cplx a, const LiouvilleParams& p)
      : alpha(a), delta(conformal_weight(a, p.Q())) {}
};

}  // namespace liouville

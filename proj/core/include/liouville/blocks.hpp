#pragma once

#include <complex>
#include <ostream>
#include <vector>

#include "liouville/params.hpp"
#include "liouville/partitions.hpp"

namespace liouville {

/// External weights Delta_1..Delta_4, intermediate weight Delta_P, central charge.
struct BlockParams {
  cplx d1;
  cplx d2;
  cplx d3;
  cplx d4;
  cplx dP;
  double c;

  /// Weights from alphas and the spectrum-line momentum P.
  static BlockParams from_alphas(double a1, double a2, double a3, double a4, double P,
                                 const LiouvilleParams& params);
};

/// Default series truncation, matching the default Shapovalov level cap.
inline constexpr int kDefaultBlockTruncation = 8;

/// prod_j (nu_j Delta' - Delta + Delta'' + sum_{u<j} nu_u).
cplx v_weight(cplx d, cplx dprime, cplx dsecond, const YoungDiagram& nu);

enum class BetaMethod { inverse, solve };

/// Level-n block coefficient. `inverse` forms F^{-1} explicitly; `solve`
/// factorizes once and solves F x = v. A real Delta_P goes through the
/// Cholesky route (throws NotPositiveDefiniteError); complex Delta_P uses LU.
cplx beta_n(int n, const BlockParams& params, BetaMethod method = BetaMethod::inverse);

/// beta_0 .. beta_N.
std::vector<cplx> block_coefficients(const BlockParams& params, int truncation,
                                     BetaMethod method = BetaMethod::inverse);

struct BlockValue {
  cplx value;
  double tail_estimate;
  double growth_rate;  // r = max_{N/2 <= n <= N} |beta_n / beta_{n-1}|
  bool divergent;      // r |z| >= 1: the tail estimate is not meaningful
};

/// sum_{n <= N} beta_n z^n with the ratio-based tail estimate
/// |beta_N z^N| |z| / (1 - |z| r).
BlockValue block_eval(cplx z, const std::vector<cplx>& beta);
BlockValue block_eval(cplx z, const BlockParams& params, int truncation);

/// |beta_n|^{1/n} for n = 1..N.
std::vector<double> radius_diagnostic(const BlockParams& params, int truncation);

/// CSV with header n,re_beta,im_beta,root_abs.
void write_block_csv(std::ostream& os, const std::vector<cplx>& beta);

}  // namespace liouville

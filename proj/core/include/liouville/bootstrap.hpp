#pragma once

#include <array>
#include <complex>
#include <ostream>
#include <string>
#include <vector>

#include "liouville/blocks.hpp"
#include "liouville/params.hpp"

namespace liouville {

/// Composite Gauss-Legendre rule on [0, p_max].
struct QuadratureConfig {
  double p_max = 20.0;
  int panels = 40;
  int nodes_per_panel = 16;
  /// The refinement pass multiplies the panel count by this factor.
  int refinement_factor = 2;
  /// Worker cap for node evaluation; 0 means hardware concurrency.
  unsigned threads = 0;
};

struct FourPointResult {
  double value;
  double error;                 // refinement delta + block tail + P-tail
  double refinement_delta;      // |value - refined value|
  double refined_value;
  double block_tail;            // integrated series truncation estimate
  double p_tail;                // fitted exponential tail beyond p_max
  double decay_rate;            // fitted decay rate of the integrand
  std::vector<double> panel_contributions;
  std::vector<std::string> warnings;
};

using Alphas = std::array<double, 4>;

/// Throws ConditionError unless every alpha is < Q, a1 + a2 > Q, a3 + a4 > Q.
void check_fourpoint_conditions(const Alphas& a, const LiouvilleParams& params);

/// Integrand (1/8pi) C(a1,a2,Q-iP) C(Q+iP,a3,a4) |z|^{2(Delta_P - Delta_1 - Delta_2)} |F_P(z)|^2.
struct IntegrandSample {
  double P;
  double value;
  double block_tail;  // upper estimate of the truncation error of the integrand
  bool divergent;     // the block ratio test failed at this node
};
IntegrandSample fourpoint_integrand(double P, cplx z, const Alphas& a,
                                    const LiouvilleParams& params, int truncation);

FourPointResult fourpoint(cplx z, const Alphas& a, const LiouvilleParams& params,
                          const QuadratureConfig& quad = {},
                          int truncation = kDefaultBlockTruncation);

struct CrossingResult {
  FourPointResult s_channel;  // at z with (a1, a2, a3, a4)
  FourPointResult t_channel;  // at 1 - z with (a3, a2, a1, a4)
  double residual;            // |lhs - rhs| / max(|lhs|, |rhs|)
  double residual_error;      // propagated from the two channel errors
};

/// Requires z in (0, 1) and the channel conditions of both sides.
CrossingResult crossing_residual(double z, const Alphas& a, const LiouvilleParams& params,
                                 const QuadratureConfig& quad = {},
                                 int truncation = kDefaultBlockTruncation);

/// CSV of integrand samples: P,value,block_tail.
void write_integrand_csv(std::ostream& os, cplx z, const Alphas& a,
                         const LiouvilleParams& params, int truncation, double p_max,
                         int samples);

}  // namespace liouville

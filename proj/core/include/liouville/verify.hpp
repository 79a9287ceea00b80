#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "liouville/bootstrap.hpp"
#include "liouville/gmc.hpp"

namespace liouville {

/// Outcome of one verification check. `measured` is the worst deviation
/// seen (or the statistic being bounded) and is compared against `tolerance`.
struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  double seconds = 0.0;
  double time_limit = 0.0;  // 0 means no runtime bound
  std::string detail;
  std::vector<std::string> notes;  // informational lines, not part of the verdict
};

/// Upsilon reflection, both shift relations on a 20-point complex grid for
/// gamma in {0.6, 1.0, 1.4}, and Upsilon(Q/2) = 1.
CheckResult verify_upsilon_relations();

/// DOZZ permutation symmetry, mu-power scaling, and Upsilon'(0) = Upsilon(gamma/2)
/// against a Richardson-extrapolated central difference.
CheckResult verify_dozz_invariants();

/// Fock-space Gram matrix against products of abstract Shapovalov forms for all
/// label pairs up to `max_level`, at `n_alpha` random complex alphas.
CheckResult verify_shapovalov_fock(int max_level = 6, int n_alpha = 10,
                                   std::uint64_t seed = 2024);

/// Kac zeros and gamma-independence of the fitted constant for levels <= max_level.
CheckResult verify_kac(int max_level = 6);

/// beta_1 closed form, exchange symmetry for n <= max_level and a bounded root test.
CheckResult verify_block_coefficients(int max_level = 6);

struct CrossingCheckOptions {
  double z = 0.4;
  Alphas alphas{1.6, 1.4, 1.6, 1.4};
  double gamma = 1.0;
  double mu = 1.0;
  int truncation = 6;
  double tolerance = 1e-2;
  QuadratureConfig quadrature;
  /// Extra truncations evaluated for information only.
  std::vector<int> informational{7, 8, 9, 10};
};

/// Crossing residual below tolerance at the target truncation, strictly
/// decreasing from truncation 4 upward, and a cutoff-doubling delta below the
/// reported quadrature error.
CheckResult verify_crossing(const CrossingCheckOptions& options = {});

/// Three-point GMC estimate against half the DOZZ constant.
CheckResult verify_gmc_dozz(const GmcConfig& config, double alpha = 2.4, double gamma = 1.0);

struct GmcInvariantOptions {
  GmcConfig config;
  std::uint64_t scaling_samples = 2000;
  std::uint64_t rotation_samples = 2000;
  std::uint64_t dilation_samples = 20000;
  double dilation = 1.2;
};

/// Shared-seed mu ratio, exact rotation invariance on grid rotations and
/// dilation covariance within three standard errors.
CheckResult verify_gmc_invariants(const GmcInvariantOptions& options = {});

}  // namespace liouville

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "liouville/params.hpp"

namespace liouville {

/// Polar grid shared by both hemispheres. Row k sits at t_k = (k + 1/2) dt,
/// with |z| = e^{-t} inside the unit disk and |z| = e^{t} outside; column m
/// sits at theta_m = (m + 1/2) 2 pi / angular.
struct GridConfig {
  int n_modes = 128;
  int angular = 256;
  double dt = 1.0 / 64.0;
  double t_max = 6.0;

  int rows() const;
  double dtheta() const;
  /// Throws ConditionError unless angular >= 2 n_modes and the sizes are sane.
  void validate() const;
};

enum class Hemisphere { inner = 0, outer = 1 };

/// Exact variance of the truncated field at log-radius t (either hemisphere):
/// sum_n e^{-2nt}/n + t + sum_n (1 - e^{-2nt})/n = t + H_N.
double truncated_variance(double t, int n_modes);

/// Exact covariance of the truncated field between two points off the unit circle.
double truncated_covariance(cplx z, cplx w, int n_modes);

/// One joint sample of the truncated sphere field.
struct GffSample {
  GridConfig grid;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  std::vector<cplx> phi;             // phi_1 .. phi_N of the boundary circle field
  std::vector<double> inner;         // rows x angular, row-major
  std::vector<double> outer;
  std::vector<cplx> probes;
  std::vector<double> probe_values;  // exact mode sums at the probe points

  double at(Hemisphere h, int row, int col) const;
};

/// Deterministic in (seed, index, grid, probes).
GffSample sample_gff(std::uint64_t seed, std::uint64_t index, const GridConfig& grid,
                     const std::vector<cplx>& probes = {});

/// e^{gamma X - gamma^2/2 Var_N} e^{-2t} dt dtheta for one grid cell; this is the
/// chaos mass of the cell including the 1/|z|_+^4 density.
double gmc_weight(const GffSample& sample, double gamma, Hemisphere h, int row, int col);

struct Insertion {
  cplx z;
  double alpha;
};

struct SeibergReport {
  bool passed;
  double sum_margin;  // sum alpha - 2Q, must be > 0
  double max_margin;  // Q - max alpha, must be > 0
  std::string reason;
};

SeibergReport seiberg_check(const std::vector<double>& alphas, const LiouvilleParams& params);

struct GmcConfig {
  GridConfig grid;
  std::uint64_t n_samples = 100000;
  std::uint64_t seed = 1;
  int batches = 32;
  /// Integrate the singular factors exactly over the cells near each
  /// insertion and add the mass below the mode cutoff as a sampled
  /// sub-cutoff chaos factor. Off means plain midpoint weights.
  bool subgrid_correction = true;
  /// Couple each sample to its rotation by rotation_steps * dtheta.
  int rotation_steps = 0;
  unsigned threads = 0;
};

struct GmcEstimate {
  double value;
  double std_error;
  std::uint64_t n_samples;
  std::uint64_t seed;
  int batches;
  double s;
  double moment;        // mean of Z^{-s}
  double moment_error;
  double prefactor;     // gamma^{-1} prod |z_j - z_k|^{-a_j a_k} mu^{-s} Gamma(s)
  std::vector<Insertion> insertions;
  double gamma;
  double mu;
  GmcConfig config;
};

/// Monte Carlo estimate of the n-point correlation. Throws ConditionError
/// on a Seiberg violation or insertions the grid cannot resolve.
GmcEstimate correlation_mc(const std::vector<Insertion>& insertions,
                           const LiouvilleParams& params, const GmcConfig& config);

struct MobiusMap {
  cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

  cplx operator()(cplx z) const { return (a * z + b) / (c * z + d); }
  cplx derivative(cplx z) const { return 1.0 / ((c * z + d) * (c * z + d)); }
  static MobiusMap rotation(double theta);
  static MobiusMap dilation(double lambda);
};

struct MobiusReport {
  GmcEstimate original;
  GmcEstimate mapped;
  double covariance_factor;  // prod |psi'(z_i)|^{-2 Delta_i}
  double residual;           // |mapped - factor original| / |mapped|
  double combined_sigma;     // relative combined standard error
  double z_score;
  bool coupled;              // grid rotation coupling was used
};

MobiusReport mobius_check(const std::vector<Insertion>& insertions, const MobiusMap& psi,
                          const LiouvilleParams& params, const GmcConfig& config);

struct ThreePointComparison {
  GmcEstimate estimate;
  double structure_constant;  // correlation times |z12 z13 z23|^{2 Delta}
  double structure_error;
  double dozz_half;
  double relative_difference;
  double z_score;
};

/// Equal-alpha three-point function with insertions on an equilateral
/// triangle of radius `radius`, compared with half the DOZZ constant.
ThreePointComparison compare_three_point_dozz(double alpha, const LiouvilleParams& params,
                                              const GmcConfig& config, double radius = 0.5);

/// JSON config: {"gamma", "mu", "insertions": [{"z": "re+imi" | [re, im], "alpha"}],
/// "grid": {...}, "samples", "seed", "batches", "subgrid_correction"}.
struct GmcJobConfig {
  double gamma = 1.0;
  double mu = 1.0;
  std::vector<Insertion> insertions;
  GmcConfig config;
};
GmcJobConfig parse_gmc_config(const std::string& json_text);
std::string gmc_estimate_json(const GmcEstimate& est);

}  // namespace liouville

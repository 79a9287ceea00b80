#include <cmath>
#include <numbers>
#include <vector>

#include "check.hpp"
#include "doctest.h"
#include "liouville/error.hpp"
#include "liouville/gmc.hpp"

using namespace liouville;
using liouville::testing::rel_diff;

namespace {

GridConfig small_grid() {
  GridConfig g;
  g.n_modes = 16;
  g.angular = 32;
  g.dt = 1.0 / 16.0;
  g.t_max = 3.0;
  return g;
}

GmcConfig small_config(std::uint64_t samples) {
  GmcConfig c;
  c.grid = small_grid();
  c.n_samples = samples;
  c.batches = 8;
  c.seed = 11;
  return c;
}

std::vector<Insertion> triangle(double alpha) {
  std::vector<Insertion> ins;
  for (int k = 0; k < 3; ++k) {
    const double th = 2.0 * std::numbers::pi * k / 3.0 + 0.05;
    ins.push_back({std::polar(0.5, th), alpha});
  }
  return ins;
}

}  // namespace

TEST_CASE("grid validation") {
  GridConfig g = small_grid();
  CHECK_NOTHROW(g.validate());
  CHECK(g.rows() == 48);
  g.angular = 16;
  CHECK_THROWS_AS(g.validate(), ConditionError);
}

TEST_CASE("variance closed form") {
  for (double t : {0.1, 1.0, 2.5}) {
    double direct = t;
    for (int n = 1; n <= 16; ++n) {
      direct += std::exp(-2.0 * n * t) / n + (1.0 - std::exp(-2.0 * n * t)) / n;
    }
    CHECK(rel_diff(truncated_variance(t, 16), direct) < 1e-14);
    const cplx z = std::polar(std::exp(-t), 0.4);
    CHECK(rel_diff(truncated_covariance(z, z, 16), direct) < 1e-12);
    CHECK(rel_diff(truncated_covariance(1.0 / std::conj(z), 1.0 / std::conj(z), 16), direct) <
          1e-12);
  }
  const cplx z(0.3, 0.2), w(-1.4, 0.9);
  CHECK(rel_diff(truncated_covariance(z, w, 16), truncated_covariance(w, z, 16)) < 1e-14);
}

TEST_CASE("samples are deterministic") {
  const GridConfig g = small_grid();
  const std::vector<cplx> probes{cplx(0.2, 0.1)};
  const GffSample a = sample_gff(5, 9, g, probes);
  const GffSample b = sample_gff(5, 9, g, probes);
  CHECK(a.inner == b.inner);
  CHECK(a.outer == b.outer);
  CHECK(a.probe_values == b.probe_values);
  const GffSample c = sample_gff(5, 10, g, probes);
  CHECK(a.inner != c.inner);
}

TEST_CASE("field statistics match the covariance") {
  const GridConfig g = small_grid();
  const std::vector<cplx> probes{cplx(0.4, 0.1), cplx(-0.3, 0.5), cplx(1.8, -0.6)};
  const int n = 4000;
  std::vector<double> sre(g.n_modes, 0.0), sre2(g.n_modes, 0.0), sim2(g.n_modes, 0.0);
  double c01 = 0.0, c02 = 0.0, v0 = 0.0;
  for (int i = 0; i < n; ++i) {
    const GffSample s = sample_gff(3, i, g, probes);
    for (int m = 0; m < g.n_modes; ++m) {
      sre[m] += s.phi[m].real();
      sre2[m] += s.phi[m].real() * s.phi[m].real();
      sim2[m] += s.phi[m].imag() * s.phi[m].imag();
    }
    v0 += s.probe_values[0] * s.probe_values[0];
    c01 += s.probe_values[0] * s.probe_values[1];
    c02 += s.probe_values[0] * s.probe_values[2];
  }
  for (int m = 0; m < g.n_modes; ++m) {
    const double var = 1.0 / (4.0 * (m + 1));
    CHECK(std::abs(sre[m] / n) < 5.0 * std::sqrt(var / n));
    CHECK(std::abs(sre2[m] / n - var) < 5.0 * var * std::sqrt(2.0 / n));
    CHECK(std::abs(sim2[m] / n - var) < 5.0 * var * std::sqrt(2.0 / n));
  }
  const auto check_cov = [&](double sum, cplx z, cplx w) {
    const double expected = truncated_covariance(z, w, g.n_modes);
    const double sd = std::sqrt((truncated_covariance(z, z, g.n_modes) *
                                     truncated_covariance(w, w, g.n_modes) +
                                 expected * expected) /
                                n);
    CHECK(std::abs(sum / n - expected) < 5.0 * sd);
  };
  check_cov(v0, probes[0], probes[0]);
  check_cov(c01, probes[0], probes[1]);
  check_cov(c02, probes[0], probes[2]);
}

TEST_CASE("grid values agree with probe values at cell centres") {
  const GridConfig g = small_grid();
  const int row = 5, col = 7;
  const double t = (row + 0.5) * g.dt;
  const double th = (col + 0.5) * g.dtheta();
  const std::vector<cplx> probes{std::polar(std::exp(-t), th), std::polar(std::exp(t), th)};
  const GffSample s = sample_gff(2, 1, g, probes);
  CHECK(std::abs(s.at(Hemisphere::inner, row, col) - s.probe_values[0]) < 1e-11);
  CHECK(std::abs(s.at(Hemisphere::outer, row, col) - s.probe_values[1]) < 1e-11);
}

TEST_CASE("zero coupling weight is the flat sphere area") {
  const GridConfig g = small_grid();
  const GffSample s = sample_gff(1, 0, g);
  double total = 0.0;
  for (int h = 0; h < 2; ++h) {
    for (int r = 0; r < g.rows(); ++r) {
      for (int c = 0; c < g.angular; ++c) total += gmc_weight(s, 0.0, Hemisphere(h), r, c);
    }
  }
  const double exact = 2.0 * std::numbers::pi * (1.0 - std::exp(-2.0 * g.t_max));
  CHECK(std::abs(total - exact) < 1e-3 * exact);
}

TEST_CASE("Seiberg bounds") {
  const LiouvilleParams p(1.0, 1.0);
  CHECK(seiberg_check({2.4, 2.4, 2.4}, p).passed);
  CHECK_FALSE(seiberg_check({1.5, 1.5, 1.5}, p).passed);
  CHECK_FALSE(seiberg_check({2.6, 2.0, 2.0}, p).passed);
  CHECK_THROWS_AS(correlation_mc(triangle(1.5), p, small_config(16)), ConditionError);
  std::vector<Insertion> two{{cplx(0.2, 0.0), 2.4}, {cplx(-0.2, 0.0), 2.4}};
  CHECK_THROWS_AS(correlation_mc(two, p, small_config(16)), ConditionError);
}

TEST_CASE("estimator structure") {
  const LiouvilleParams p(1.0, 1.0);
  const auto ins = triangle(2.4);
  const GmcEstimate e1 = correlation_mc(ins, p, small_config(64));
  CHECK(e1.value > 0.0);
  CHECK(std::isfinite(e1.std_error));
  CHECK(rel_diff(e1.s, 2.2) < 1e-14);

  const GmcEstimate e2 = correlation_mc(ins, p.with_mu(2.0), small_config(64));
  CHECK(rel_diff(e2.value / e1.value, std::pow(2.0, -2.2)) < 1e-14);

  const GmcEstimate again = correlation_mc(ins, p, small_config(64));
  CHECK(again.value == e1.value);

  const std::vector<Insertion> permuted{ins[2], ins[0], ins[1]};
  CHECK(rel_diff(correlation_mc(permuted, p, small_config(64)).value, e1.value) < 1e-14);

  GmcConfig threaded = small_config(64);
  threaded.threads = 3;
  CHECK(correlation_mc(ins, p, threaded).value == e1.value);
}

TEST_CASE("standard error shrinks like the square root of the sample count") {
  const LiouvilleParams p(1.0, 1.0);
  const auto ins = triangle(2.4);
  const GmcEstimate small = correlation_mc(ins, p, small_config(200));
  const GmcEstimate large = correlation_mc(ins, p, small_config(800));
  const double ratio = small.std_error / large.std_error;
  CHECK(ratio > 1.2);
  CHECK(ratio < 5.0);
}

TEST_CASE("rotation by whole grid steps is reproduced by coupling") {
  const LiouvilleParams p(1.0, 1.0);
  const GmcConfig cfg = small_config(32);
  const MobiusMap rot = MobiusMap::rotation(3.0 * cfg.grid.dtheta());
  const MobiusReport r = mobius_check(triangle(2.4), rot, p, cfg);
  CHECK(r.coupled);
  CHECK(rel_diff(r.covariance_factor, 1.0) < 1e-14);
  CHECK(r.residual < 1e-10);
}

TEST_CASE("JSON config round trip") {
  const GmcJobConfig job = parse_gmc_config(R"({
    "gamma": 1.0, "mu": 1.5,
    "insertions": [{"z": "0.5+0.1i", "alpha": 2.4}, {"z": [-0.3, 0.2], "alpha": 2.4},
                   {"z": "-0.2-0.4i", "alpha": 2.4}],
    "samples": 10, "seed": 4
  })");
  CHECK(job.mu == 1.5);
  REQUIRE(job.insertions.size() == 3);
  CHECK(job.insertions[1].z == cplx(-0.3, 0.2));
  CHECK(job.config.n_samples == 10);
  CHECK(job.config.seed == 4);
  CHECK_THROWS(parse_gmc_config("{"));
}

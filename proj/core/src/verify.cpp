#include "liouville/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>
#include <utility>

#include "liouville/blocks.hpp"
#include "liouville/fock.hpp"
#include "liouville/random.hpp"
#include "liouville/special.hpp"
#include "liouville/virasoro.hpp"

namespace liouville {

namespace {

double rel_diff(cplx a, cplx b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

void finish(CheckResult& r, const Stopwatch& clock, bool ok) {
  r.seconds = clock.seconds();
  r.passed = ok && (r.time_limit <= 0.0 || r.seconds < r.time_limit);
  if (ok && !r.passed) r.detail += "; runtime bound exceeded";
}

// Twenty points straddling both strip boundaries for every gamma used.
std::vector<cplx> upsilon_grid() {
  std::vector<cplx> pts;
  for (double x : {-1.7, -0.9, -0.2, 0.4, 1.1, 1.9, 2.6, 3.3, 4.0, 4.8}) {
    for (double y : {-0.6, 0.9}) pts.emplace_back(x, y);
  }
  return pts;
}

cplx shift_small(cplx z, const LiouvilleParams& p) {
  const double g = p.gamma();
  return ell(0.5 * g * z) * std::pow(0.5 * g, 1.0 - g * z) * upsilon(z, p);
}

cplx shift_large(cplx z, const LiouvilleParams& p) {
  const double g = p.gamma();
  return ell(2.0 * z / g) * std::pow(0.5 * g, 4.0 * z / g - 1.0) * upsilon(z, p);
}

}  // namespace

CheckResult verify_upsilon_relations() {
  const Stopwatch clock;
  CheckResult r;
  r.name = "upsilon relations";
  r.tolerance = 1e-8;
  r.time_limit = 10.0;
  double worst_sym = 0.0, worst_shift = 0.0, worst_centre = 0.0;
  for (double g : {0.6, 1.0, 1.4}) {
    const LiouvilleParams p(g, 1.0);
    for (const cplx z : upsilon_grid()) {
      worst_sym = std::max(worst_sym, rel_diff(upsilon(z, p), upsilon(p.Q() - z, p)));
      worst_shift = std::max(worst_shift, rel_diff(upsilon(z + 0.5 * g, p), shift_small(z, p)));
      worst_shift = std::max(worst_shift, rel_diff(upsilon(z + 2.0 / g, p), shift_large(z, p)));
    }
    worst_centre = std::max(worst_centre, std::abs(upsilon(0.5 * p.Q(), p) - 1.0));
  }
  r.measured = std::max(worst_sym, worst_shift);
  r.detail = "reflection " + fmt("%.2e", worst_sym) + ", shifts " + fmt("%.2e", worst_shift) +
             ", |Upsilon(Q/2) - 1| " + fmt("%.2e", worst_centre) + " (bound 1e-10)";
  finish(r, clock, r.measured <= r.tolerance && worst_centre <= 1e-10);
  return r;
}

CheckResult verify_dozz_invariants() {
  const Stopwatch clock;
  CheckResult r;
  r.name = "dozz invariants";
  r.tolerance = 1e-12;
  r.time_limit = 5.0;
  const std::array<std::array<cplx, 3>, 3> triples{{
      {cplx(0.9), cplx(1.1), cplx(1.3)},
      {cplx(1.6), cplx(1.4), cplx(2.5, -1.3)},
      {cplx(2.4), cplx(2.4, 0.3), cplx(0.7, -0.2)},
  }};
  double worst_perm = 0.0, worst_mu = 0.0;
  for (double g : {0.6, 1.0, 1.4}) {
    const LiouvilleParams p(g, 1.0);
    for (auto t : triples) {
      const cplx base = dozz(t[0], t[1], t[2], p);
      std::array<int, 3> idx{0, 1, 2};
      while (std::next_permutation(idx.begin(), idx.end())) {
        worst_perm =
            std::max(worst_perm, rel_diff(base, dozz(t[idx[0]], t[idx[1]], t[idx[2]], p)));
      }
      const cplx abar = t[0] + t[1] + t[2];
      const cplx normalized = base;  // mu = 1
      for (double mu : {0.5, 2.0}) {
        const cplx v = dozz(t[0], t[1], t[2], p.with_mu(mu)) *
                       std::pow(cplx(mu), (abar - 2.0 * p.Q()) / g);
        worst_mu = std::max(worst_mu, rel_diff(v, normalized));
      }
    }
  }
  double worst_prime = 0.0;
  for (double g : {0.5, 1.0, 1.5}) {
    const LiouvilleParams p(g, 1.0);
    const double h = 1e-3;
    auto central = [&](double step) {
      return (upsilon(step, p) - upsilon(-step, p)).real() / (2.0 * step);
    };
    const double richardson = (4.0 * central(0.5 * h) - central(h)) / 3.0;
    const double prime = upsilon_prime_zero(p);
    worst_prime = std::max(worst_prime, rel_diff(prime, richardson));
    worst_prime = std::max(worst_prime, rel_diff(prime, upsilon(0.5 * g, p)));
    if (!(prime > 0.0)) worst_prime = std::max(worst_prime, 1.0);
  }
  r.measured = std::max(worst_perm, worst_mu);
  r.detail = "permutations " + fmt("%.2e", worst_perm) + ", mu scaling " + fmt("%.2e", worst_mu) +
             ", Upsilon'(0) " + fmt("%.2e", worst_prime) + " (bound 1e-8)";
  finish(r, clock, r.measured <= r.tolerance && worst_prime <= 1e-8);
  return r;
}

CheckResult verify_shapovalov_fock(int max_level, int n_alpha, std::uint64_t seed) {
  const Stopwatch clock;
  CheckResult r;
  r.name = "shapovalov vs fock gram";
  r.tolerance = 1e-9;
  r.time_limit = 120.0;
  const LiouvilleParams params(1.0, 1.0);
  const double c = params.central_charge();
  const std::vector<DescendantLabel> labels = descendant_labels(max_level);

  std::vector<int> row_of(labels.size()), tilde_row_of(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto& dn = shapovalov_matrix(labels[i].nu.length()).diagrams();
    const auto& dt = shapovalov_matrix(labels[i].nutilde.length()).diagrams();
    row_of[i] = static_cast<int>(std::find(dn.begin(), dn.end(), labels[i].nu) - dn.begin());
    tilde_row_of[i] =
        static_cast<int>(std::find(dt.begin(), dt.end(), labels[i].nutilde) - dt.begin());
  }

  PhiloxStream rng(seed, 0);
  double worst = 0.0;
  for (int k = 0; k < n_alpha; ++k) {
    const cplx alpha(0.2 + 2.1 * rng.uniform(), -1.0 + 2.0 * rng.uniform());
    const cplx delta = conformal_weight(alpha, params.Q());
    std::vector<Eigen::MatrixXcd> F;
    for (int n = 0; n <= max_level; ++n) F.push_back(shapovalov_matrix(n).evaluate(delta, c));
    const Eigen::MatrixXcd G = fock_gram(alpha, params, labels);

    const auto n = static_cast<Eigen::Index>(labels.size());
    Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        const auto& li = labels[i];
        const auto& lj = labels[j];
        if (li.nu.length() != lj.nu.length() || li.nutilde.length() != lj.nutilde.length()) {
          continue;
        }
        E(i, j) = F[li.nu.length()](row_of[i], row_of[j]) *
                  F[li.nutilde.length()](tilde_row_of[i], tilde_row_of[j]);
      }
    }
    // Entries are compared on the scale of their diagonal bi-level block.
    std::map<std::pair<int, int>, double> block_scale;
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto key = std::make_pair(labels[i].nu.length(), labels[i].nutilde.length());
      for (Eigen::Index j = 0; j < n; ++j) {
        if (std::make_pair(labels[j].nu.length(), labels[j].nutilde.length()) == key) {
          block_scale[key] = std::max(block_scale[key], std::abs(E(i, j)));
        }
      }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      const double si = block_scale[{labels[i].nu.length(), labels[i].nutilde.length()}];
      for (Eigen::Index j = 0; j < n; ++j) {
        const double sj = block_scale[{labels[j].nu.length(), labels[j].nutilde.length()}];
        worst = std::max(worst, std::abs(G(i, j) - E(i, j)) / std::sqrt(si * sj));
      }
    }
  }
  r.measured = worst;
  r.detail = std::to_string(labels.size()) + " labels up to total level " +
             std::to_string(max_level) + ", " + std::to_string(n_alpha) +
             " complex alphas, worst block-relative deviation " + fmt("%.2e", worst);
  finish(r, clock, worst <= r.tolerance);
  return r;
}

CheckResult verify_kac(int max_level) {
  const Stopwatch clock;
  CheckResult r;
  r.name = "kac determinant";
  r.tolerance = 1e-8;
  r.time_limit = 60.0;
  bool ok = true;
  double worst_exact = 0.0, worst_kappa = 0.0, worst_fit = 0.0;
  int roots = 0;
  for (int N = 1; N <= max_level; ++N) {
    std::vector<mpq_class> kappas;
    for (double g : {0.7, 1.0, 1.3}) {
      const KacReport rep = kac_check(N, LiouvilleParams(g, 1.0), 1e-20);
      ok = ok && rep.passed;
      worst_fit = std::max(worst_fit, rep.factorization_residual);
      for (const KacRoot& root : rep.roots) {
        worst_exact = std::max(worst_exact, root.det_exact_abs);
        ++roots;
      }
      kappas.push_back(rep.kappa);
    }
    for (const mpq_class& k : kappas) {
      worst_kappa = std::max(worst_kappa, rel_diff(k.get_d(), kappas.front().get_d()));
    }
  }
  r.measured = worst_kappa;
  r.detail = std::to_string(roots) + " roots, max |det| exact " + fmt("%.2e", worst_exact) +
             " (bound 1e-20), kappa spread " + fmt("%.2e", worst_kappa) +
             ", factorization residual " + fmt("%.2e", worst_fit);
  finish(r, clock, ok && worst_exact < 1e-20 && worst_kappa <= r.tolerance);
  return r;
}

CheckResult verify_block_coefficients(int max_level) {
  const Stopwatch clock;
  CheckResult r;
  r.name = "block coefficients";
  r.tolerance = 1e-12;
  r.time_limit = 60.0;
  const LiouvilleParams p(1.0, 1.0);
  const std::array<std::array<double, 4>, 2> sets{{{1.6, 1.4, 1.6, 1.4}, {1.3, 1.7, 1.5, 1.2}}};
  double worst_b1 = 0.0, worst_sym = 0.0, worst_root = 0.0;
  bool bounded = true;
  for (const auto& a : sets) {
    for (double P : {0.3, 1.0, 2.5}) {
      const BlockParams bp = BlockParams::from_alphas(a[0], a[1], a[2], a[3], P, p);
      const cplx closed = (bp.dP + bp.d2 - bp.d1) * (bp.dP + bp.d3 - bp.d4) / (2.0 * bp.dP);
      worst_b1 = std::max(worst_b1, rel_diff(beta_n(1, bp), closed));
      BlockParams swapped = bp;
      swapped.d1 = bp.d4;
      swapped.d2 = bp.d3;
      swapped.d3 = bp.d2;
      swapped.d4 = bp.d1;
      const auto beta = block_coefficients(bp, max_level);
      const auto beta_swapped = block_coefficients(swapped, max_level);
      for (int n = 0; n <= max_level; ++n) {
        worst_sym = std::max(worst_sym, rel_diff(beta[n], beta_swapped[n]));
      }
      for (double root : radius_diagnostic(bp, max_level)) {
        if (!std::isfinite(root)) bounded = false;
        worst_root = std::max(worst_root, root);
      }
    }
  }
  // A radius of convergence of 1 shows up as |beta_n|^{1/n} staying O(1).
  const double root_bound = 4.0;
  bounded = bounded && worst_root < root_bound;
  r.measured = std::max(worst_b1, worst_sym);
  r.detail = "beta_1 closed form " + fmt("%.2e", worst_b1) + ", exchange symmetry " +
             fmt("%.2e", worst_sym) + ", max |beta_n|^(1/n) " + fmt("%.3f", worst_root) +
             " (bound " + fmt("%.0f", root_bound) + ")";
  finish(r, clock, r.measured <= r.tolerance && bounded);
  return r;
}

CheckResult verify_crossing(const CrossingCheckOptions& o) {
  const Stopwatch clock;
  CheckResult r;
  r.name = "crossing symmetry";
  r.tolerance = o.tolerance;
  r.time_limit = 600.0;
  const LiouvilleParams p(o.gamma, o.mu);
  std::vector<double> residuals;
  CrossingResult target{};
  for (int N = 4; N <= o.truncation; ++N) {
    const CrossingResult c = crossing_residual(o.z, o.alphas, p, o.quadrature, N);
    residuals.push_back(c.residual);
    r.notes.push_back("N=" + std::to_string(N) + " residual " + fmt("%.4e", c.residual) +
                      " (propagated error " + fmt("%.2e", c.residual_error) + ")");
    if (N == o.truncation) target = c;
  }
  bool decreasing = true;
  for (std::size_t k = 1; k < residuals.size(); ++k) {
    decreasing = decreasing && residuals[k] < residuals[k - 1];
  }

  QuadratureConfig doubled = o.quadrature;
  doubled.p_max *= 2.0;
  doubled.panels *= 2;
  const CrossingResult wide = crossing_residual(o.z, o.alphas, p, doubled, o.truncation);
  const double ds = std::abs(wide.s_channel.value - target.s_channel.value);
  const double dt = std::abs(wide.t_channel.value - target.t_channel.value);
  const bool doubling_ok = ds < target.s_channel.error && dt < target.t_channel.error;
  r.notes.push_back("cutoff doubling delta s " + fmt("%.2e", ds) + " vs error " +
                    fmt("%.2e", target.s_channel.error) + ", t " + fmt("%.2e", dt) +
                    " vs error " + fmt("%.2e", target.t_channel.error));

  r.measured = target.residual;
  r.detail = "residual at N=" + std::to_string(o.truncation) + " " +
             fmt("%.4e", target.residual) + (decreasing ? ", strictly decreasing" :
                                                          ", NOT decreasing") +
             (doubling_ok ? ", doubling within error" : ", doubling exceeds error");
  const bool ok = target.residual < o.tolerance && decreasing && doubling_ok;
  r.seconds = clock.seconds();

  for (int N : o.informational) {
    const CrossingResult c = crossing_residual(o.z, o.alphas, p, o.quadrature, N);
    r.notes.push_back("info N=" + std::to_string(N) + " residual " + fmt("%.4e", c.residual) +
                      " (propagated error " + fmt("%.2e", c.residual_error) + ")");
  }
  // The informational truncations are not part of the timed criterion.
  r.passed = ok && r.seconds < r.time_limit;
  if (ok && !r.passed) r.detail += "; runtime bound exceeded";
  return r;
}

CheckResult verify_gmc_dozz(const GmcConfig& config, double alpha, double gamma) {
  const Stopwatch clock;
  CheckResult r;
  r.name = "gmc vs dozz";
  r.tolerance = 0.10;
  r.time_limit = 1800.0;
  const ThreePointComparison cmp =
      compare_three_point_dozz(alpha, LiouvilleParams(gamma, 1.0), config);
  r.measured = cmp.relative_difference;
  r.detail = "C_mc " + fmt("%.5e", cmp.structure_constant) + " +- " +
             fmt("%.2e", cmp.structure_error) + ", DOZZ/2 " + fmt("%.5e", cmp.dozz_half) +
             ", z " + fmt("%.2f", cmp.z_score) + ", samples " +
             std::to_string(cmp.estimate.n_samples);
  finish(r, clock,
         std::abs(cmp.z_score) <= 3.0 && cmp.relative_difference <= r.tolerance &&
             cmp.estimate.n_samples >= 100000);
  return r;
}

CheckResult verify_gmc_invariants(const GmcInvariantOptions& o) {
  const Stopwatch clock;
  CheckResult r;
  r.name = "gmc invariants";
  r.tolerance = 1e-14;
  r.time_limit = 600.0;
  const LiouvilleParams p(1.0, 1.0);
  std::vector<Insertion> triangle;
  for (int k = 0; k < 3; ++k) {
    const double th = 2.0 * std::numbers::pi * k / 3.0 + 0.25 * o.config.grid.dtheta();
    triangle.push_back({std::polar(0.5, th), 2.4});
  }

  GmcConfig cfg = o.config;
  cfg.n_samples = o.scaling_samples;
  const GmcEstimate e1 = correlation_mc(triangle, p, cfg);
  const GmcEstimate e2 = correlation_mc(triangle, p.with_mu(2.0), cfg);
  const double mu_dev = std::abs(e2.value / e1.value / std::pow(2.0, -e1.s) - 1.0);

  cfg.n_samples = o.rotation_samples;
  const MobiusReport rot =
      mobius_check(triangle, MobiusMap::rotation(5.0 * cfg.grid.dtheta()), p, cfg);
  const double rotation_bound = 1e-12;

  cfg.n_samples = o.dilation_samples;
  const MobiusReport dil = mobius_check(triangle, MobiusMap::dilation(o.dilation), p, cfg);

  r.measured = mu_dev;
  r.detail = "mu ratio " + fmt("%.2e", mu_dev) + ", rotation residual " +
             fmt("%.2e", rot.residual) + (rot.coupled ? " (coupled)" : " (uncoupled)") +
             ", dilation z " + fmt("%.2f", dil.z_score) + " (residual " +
             fmt("%.3f", dil.residual) + ")";
  finish(r, clock,
         mu_dev <= r.tolerance && rot.coupled && rot.residual <= rotation_bound &&
             std::abs(dil.z_score) <= 3.0);
  return r;
}

}  // namespace liouville

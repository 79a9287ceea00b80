#include "liouville/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "liouville/error.hpp"
#include "liouville/parallel.hpp"
#include "liouville/quadrature.hpp"
#include "liouville/special.hpp"

namespace liouville {

namespace {

struct Integrator {
  cplx z;
  Alphas a;
  LiouvilleParams params;
  int truncation;
  DozzFormula dozz;

  IntegrandSample operator()(double P) const {
    const double Q = params.Q();
    const cplx left = dozz(a[0], a[1], cplx(Q, -P));
    const cplx right = dozz(cplx(Q, P), a[2], a[3]);
    const BlockParams bp = BlockParams::from_alphas(a[0], a[1], a[2], a[3], P, params);
    const BlockValue block = block_eval(z, block_coefficients(bp, truncation));
    const double exponent =
        2.0 * (bp.dP.real() - bp.d1.real() - bp.d2.real());
    const double scale = std::pow(std::abs(z), exponent) / (8.0 * std::numbers::pi);
    const double cc = (left * right).real();
    const double f2 = std::norm(block.value);
    const double fabs = std::abs(block.value);
    // Where the ratio test fails the series tail is unbounded; the node then
    // carries a 100% uncertainty on |F| so its weight stays finite.
    const double t = block.divergent ? fabs : block.tail_estimate;
    const double weight = std::abs(cc) * scale;
    return {P, cc * scale * f2, weight == 0.0 ? 0.0 : weight * (2.0 * fabs * t + t * t),
            block.divergent};
  }
};

struct PassResult {
  double value;
  double block_tail;
  std::vector<double> panels;
  std::vector<IntegrandSample> samples;  // in node order
  bool divergent;
};

PassResult integrate_pass(const Integrator& f, double p_max, int panels, int nodes,
                          unsigned threads) {
  const GaussLegendreRule& rule = gauss_legendre(nodes);
  const double h = p_max / panels;
  const std::size_t total = static_cast<std::size_t>(panels) * nodes;
  std::vector<IntegrandSample> samples(total);
  parallel_for(total, threads, [&](std::size_t idx) {
    const std::size_t k = idx / nodes;
    const std::size_t j = idx % nodes;
    const double mid = (k + 0.5) * h;
    samples[idx] = f(mid + 0.5 * h * rule.nodes[j]);
  });
  PassResult out{0.0, 0.0, std::vector<double>(panels, 0.0), samples, false};
  CompensatedSum<double> value, tail;
  for (int k = 0; k < panels; ++k) {
    CompensatedSum<double> panel;
    for (int j = 0; j < nodes; ++j) {
      const IntegrandSample& s = samples[static_cast<std::size_t>(k) * nodes + j];
      const double w = 0.5 * h * rule.weights[j];
      panel.add(w * s.value);
      tail.add(w * s.block_tail);
      if (s.divergent) out.divergent = true;
    }
    out.panels[k] = panel.value();
    value.add(out.panels[k]);
  }
  out.value = value.value();
  out.block_tail = tail.value();
  return out;
}

// Least-squares slope of ln|f| on the last quarter of the samples.
double fit_decay(const std::vector<IntegrandSample>& samples, double p_max) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& s : samples) {
    if (s.P < 0.75 * p_max || s.value == 0.0) continue;
    const double y = std::log(std::abs(s.value));
    sx += s.P;
    sy += y;
    sxx += s.P * s.P;
    sxy += s.P * y;
    ++n;
  }
  if (n < 2) return 0.0;
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return 0.0;
  return -(n * sxy - sx * sy) / denom;
}

}  // namespace

void check_fourpoint_conditions(const Alphas& a, const LiouvilleParams& params) {
  const double Q = params.Q();
  for (std::size_t i = 0; i < 4; ++i) {
    if (!(a[i] < Q)) {
      std::ostringstream os;
      os << "fourpoint: alpha_" << i + 1 << " = " << a[i] << " must be below Q = " << Q;
      throw ConditionError(os.str());
    }
  }
  if (!(a[0] + a[1] > Q)) throw ConditionError("fourpoint: requires alpha_1 + alpha_2 > Q");
  if (!(a[2] + a[3] > Q)) throw ConditionError("fourpoint: requires alpha_3 + alpha_4 > Q");
}

IntegrandSample fourpoint_integrand(double P, cplx z, const Alphas& a,
                                    const LiouvilleParams& params, int truncation) {
  return Integrator{z, a, params, truncation, DozzFormula(params)}(P);
}

FourPointResult fourpoint(cplx z, const Alphas& a, const LiouvilleParams& params,
                          const QuadratureConfig& quad, int truncation) {
  check_fourpoint_conditions(a, params);
  const double az = std::abs(z);
  if (!(az > 0.0 && az < 1.0)) throw ConditionError("fourpoint: requires 0 < |z| < 1");
  if (!(quad.p_max > 0.0) || quad.panels < 1 || quad.nodes_per_panel < 1 ||
      quad.refinement_factor < 2) {
    throw ConditionError("fourpoint: invalid quadrature configuration");
  }
  const Integrator f{z, a, params, truncation, DozzFormula(params)};
  const PassResult base =
      integrate_pass(f, quad.p_max, quad.panels, quad.nodes_per_panel, quad.threads);
  const PassResult fine = integrate_pass(f, quad.p_max, quad.panels * quad.refinement_factor,
                                         quad.nodes_per_panel, quad.threads);

  FourPointResult out{};
  out.value = base.value;
  out.refined_value = fine.value;
  out.refinement_delta = std::abs(fine.value - base.value);
  out.block_tail = base.block_tail;
  out.panel_contributions = base.panels;
  out.decay_rate = fit_decay(base.samples, quad.p_max);
  const double last = std::abs(base.samples.back().value);
  if (out.decay_rate > 0.0) {
    out.p_tail = last / out.decay_rate;
  } else {
    out.p_tail = last * quad.p_max;
    out.warnings.push_back("integrand shows no exponential decay near p_max");
  }
  if (base.divergent) {
    out.warnings.push_back("block series ratio test indicates divergence at some nodes");
  }
  out.error = out.refinement_delta + out.block_tail + out.p_tail;
  return out;
}

CrossingResult crossing_residual(double z, const Alphas& a, const LiouvilleParams& params,
                                 const QuadratureConfig& quad, int truncation) {
  if (!(z > 0.0 && z < 1.0)) throw ConditionError("crossing_residual: requires z in (0, 1)");
  const double Q = params.Q();
  if (!(a[2] + a[1] > Q)) throw ConditionError("crossing: requires alpha_3 + alpha_2 > Q");
  if (!(a[0] + a[3] > Q)) throw ConditionError("crossing: requires alpha_1 + alpha_4 > Q");
  CrossingResult out{};
  out.s_channel = fourpoint(z, a, params, quad, truncation);
  out.t_channel = fourpoint(1.0 - z, Alphas{a[2], a[1], a[0], a[3]}, params, quad, truncation);
  const double lhs = out.s_channel.value;
  const double rhs = out.t_channel.value;
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  out.residual = scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0;
  out.residual_error = scale > 0.0 ? (out.s_channel.error + out.t_channel.error) / scale : 0.0;
  return out;
}

void write_integrand_csv(std::ostream& os, cplx z, const Alphas& a,
                         const LiouvilleParams& params, int truncation, double p_max,
                         int samples) {
  check_fourpoint_conditions(a, params);
  const Integrator f{z, a, params, truncation, DozzFormula(params)};
  os << "P,value,block_tail\n";
  os.precision(17);
  for (int k = 1; k <= samples; ++k) {
    const IntegrandSample s = f(p_max * k / samples);
    os << s.P << ',' << s.value << ',' << s.block_tail << '\n';
  }
}

}  // namespace liouville

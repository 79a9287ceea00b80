#include "liouville/gmc.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>

#include "json.hpp"
#include "liouville/error.hpp"
#include "liouville/io.hpp"
#include "liouville/parallel.hpp"
#include "liouville/quadrature.hpp"
#include "liouville/random.hpp"
#include "liouville/special.hpp"
#include "liouville/version.hpp"

namespace liouville {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

double harmonic_number(int n) {
  double h = 0.0;
  for (int k = n; k >= 1; --k) h += 1.0 / k;
  return h;
}

double plus_norm(cplx z) { return std::max(1.0, std::abs(z)); }

// Log-radius coordinate of a point: t = -ln|z| inside the disk, ln|z| outside.
Hemisphere hemisphere_of(cplx z) {
  return std::abs(z) <= 1.0 ? Hemisphere::inner : Hemisphere::outer;
}
double log_radius(cplx z) { return std::abs(std::log(std::abs(z))); }

double angle_of(cplx z) {
  double th = std::arg(z);
  if (th < 0.0) th += kTwoPi;
  return th;
}

template <class T>
struct FftwDeleter {
  void operator()(T* p) const { fftw_free(p); }
};
template <class T>
using FftwBuffer = std::unique_ptr<T, FftwDeleter<T>>;

template <class T>
FftwBuffer<T> fftw_buffer(std::size_t count) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * count));
  if (p == nullptr) throw std::bad_alloc();
  return FftwBuffer<T>(p);
}

// Draws the truncated field on both hemispheres on the polar grid, plus exact
// mode sums at a list of extra points. With rotation_steps = k the point values
// are those of the sample rotated by k dtheta; the grid arrays are not rotated
// (callers shift the column index instead, which is exact).
class FieldSampler {
 public:
  struct Workspace {
    std::array<FftwBuffer<fftw_complex>, 2> spectrum;
    std::array<FftwBuffer<double>, 2> field;
    std::vector<cplx> phi;
    std::vector<cplx> modes;
    std::vector<double> point_values;
  };

  FieldSampler(const GridConfig& grid, const std::vector<cplx>& points, int rotation_steps)
      : grid_(grid), N_(grid.n_modes), M_(grid.angular), K_(grid.rows()), H_(M_ / 2 + 1) {
    grid_.validate();
    const double dth = grid_.dtheta();
    phase_.resize(N_ + 1);
    for (int n = 0; n <= N_; ++n) phase_[n] = std::polar(1.0, 0.5 * n * dth);

    npoints_ = static_cast<int>(points.size());
    point_angle_.resize(points.size());
    for (std::size_t p = 0; p < points.size(); ++p) {
      const double th = angle_of(points[p]) - rotation_steps * dth;
      point_angle_[p].resize(N_ + 1);
      for (int n = 1; n <= N_; ++n) point_angle_[p][n] = std::polar(1.0, n * th);
    }

    for (int h = 0; h < 2; ++h) {
      std::vector<Entry>& sched = schedule_[h];
      for (int k = 0; k < K_; ++k) sched.push_back({(k + 0.5) * grid_.dt, k, -1});
      for (std::size_t p = 0; p < points.size(); ++p) {
        if (static_cast<int>(hemisphere_of(points[p])) == h) {
          sched.push_back({log_radius(points[p]), -1, static_cast<int>(p)});
        }
      }
      std::stable_sort(sched.begin(), sched.end(),
                       [](const Entry& a, const Entry& b) { return a.t < b.t; });
      decay_[h].resize(sched.size() * N_);
      step_sd_[h].resize(sched.size() * N_);
      harmonic_decay_[h].resize(sched.size() * N_);
      bm_sd_[h].resize(sched.size());
      double prev = 0.0;
      for (std::size_t e = 0; e < sched.size(); ++e) {
        // Radii that agree up to rounding are the same time; a step of a few
        // ulps would otherwise inject noise of size sqrt(ulp).
        double step = sched[e].t - prev;
        if (step < 1e-12 * std::max(1.0, prev)) {
          step = 0.0;
        } else {
          prev = sched[e].t;
        }
        bm_sd_[h][e] = std::sqrt(step);
        for (int n = 1; n <= N_; ++n) {
          const double a = std::exp(-n * step);
          decay_[h][e * N_ + n - 1] = a;
          step_sd_[h][e * N_ + n - 1] = std::sqrt(-std::expm1(-2.0 * n * step) / (4.0 * n));
          harmonic_decay_[h][e * N_ + n - 1] = std::exp(-n * sched[e].t);
        }
      }
    }

    Workspace probe = make_workspace();
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    plan_ = fftw_plan_many_dft_c2r(1, &M_, K_, probe.spectrum[0].get(), nullptr, 1, H_,
                                   probe.field[0].get(), nullptr, 1, M_, FFTW_ESTIMATE);
    if (plan_ == nullptr) throw std::runtime_error("FFTW planning failed");
  }

  ~FieldSampler() {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan_);
  }
  FieldSampler(const FieldSampler&) = delete;
  FieldSampler& operator=(const FieldSampler&) = delete;

  Workspace make_workspace() const {
    Workspace ws;
    for (int h = 0; h < 2; ++h) {
      ws.spectrum[h] = fftw_buffer<fftw_complex>(static_cast<std::size_t>(K_) * H_);
      ws.field[h] = fftw_buffer<double>(static_cast<std::size_t>(K_) * M_);
      std::fill_n(reinterpret_cast<double*>(ws.spectrum[h].get()), 2 * K_ * H_, 0.0);
    }
    ws.phi.resize(N_);
    ws.modes.resize(N_);
    ws.point_values.resize(npoints_);
    return ws;
  }

  void draw(PhiloxStream& rng, Workspace& ws) const {
    for (int n = 1; n <= N_; ++n) {
      const double x = rng.normal();
      const double y = rng.normal();
      ws.phi[n - 1] = cplx(x, y) / (2.0 * std::sqrt(static_cast<double>(n)));
    }
    const bool nyquist = 2 * N_ == M_;
    for (int h = 0; h < 2; ++h) {
      std::fill(ws.modes.begin(), ws.modes.end(), cplx(0.0));
      double bm = 0.0;
      const auto& sched = schedule_[h];
      for (std::size_t e = 0; e < sched.size(); ++e) {
        const double* a = &decay_[h][e * N_];
        const double* sd = &step_sd_[h][e * N_];
        for (int j = 0; j < N_; ++j) {
          const double u = rng.normal();
          const double v = rng.normal();
          ws.modes[j] = a[j] * ws.modes[j] + sd[j] * cplx(u, v);
        }
        bm += bm_sd_[h][e] * rng.normal();
        const double* hd = &harmonic_decay_[h][e * N_];
        const Entry& entry = sched[e];
        if (entry.row >= 0) {
          auto* row = reinterpret_cast<cplx*>(ws.spectrum[h].get() + entry.row * H_);
          row[0] = bm;
          for (int n = 1; n <= N_; ++n) {
            row[n] = (ws.phi[n - 1] * hd[n - 1] + ws.modes[n - 1]) * phase_[n];
          }
          // c2r counts the Nyquist bin once and keeps only its real part.
          if (nyquist) row[N_] = 2.0 * row[N_].real();
        } else {
          double value = bm;
          const auto& ang = point_angle_[entry.point];
          for (int n = 1; n <= N_; ++n) {
            value += 2.0 * ((ws.phi[n - 1] * hd[n - 1] + ws.modes[n - 1]) * ang[n]).real();
          }
          ws.point_values[entry.point] = value;
        }
      }
      fftw_execute_dft_c2r(plan_, ws.spectrum[h].get(), ws.field[h].get());
    }
  }

  int rows() const { return K_; }
  int cols() const { return M_; }

 private:
  struct Entry {
    double t;
    int row;    // grid row, or -1
    int point;  // extra point, or -1
  };

  GridConfig grid_;
  int N_, M_, K_, H_;
  int npoints_ = 0;
  std::vector<cplx> phase_;
  std::vector<std::vector<cplx>> point_angle_;
  std::array<std::vector<Entry>, 2> schedule_;
  std::array<std::vector<double>, 2> decay_, step_sd_, harmonic_decay_, bm_sd_;
  fftw_plan plan_ = nullptr;
};

cplx cell_point(const GridConfig& g, Hemisphere h, int row, int col) {
  const double t = (row + 0.5) * g.dt;
  const double r = h == Hemisphere::inner ? std::exp(-t) : std::exp(t);
  return std::polar(r, (col + 0.5) * g.dtheta());
}

struct InsertionPlan {
  double alpha;
  double log_radius;
  // Radius below which the truncated field is treated as constant: the circle
  // average at this radius has the variance of the truncated field.
  double disc = 0.0;
  // Smooth factor prod_{j != i} |z_i - z_j|^{-gamma a_j} |z_i|_+^{gamma sum a - 4}.
  double g;
  double variance;   // Var_N at the insertion
  double inner;      // 2 pi disc^{2 - gamma a}
  double nu;         // shape of the Gamma variable in the sub-cutoff factor
};

// Integral of the deterministic density prod_j (|x|_+ / |x - z_j|)^{gamma a_j}
// e^{-2 (t - t_ref)} over a (t, theta) rectangle, with the insertion discs
// removed. Subdivides until each piece is small against its distance to every
// insertion, then applies a 3 x 3 Gauss-Legendre rule.
class CellIntegrator {
 public:
  CellIntegrator(const std::vector<Insertion>& ins, const std::vector<InsertionPlan>& plan,
                 double gamma, Hemisphere h, double t_ref)
      : ins_(ins), plan_(plan), gamma_(gamma), h_(h), t_ref_(t_ref) {}

  double operator()(double t0, double t1, double a0, double a1, int depth = 0) const {
    const double tc = 0.5 * (t0 + t1);
    const double ac = 0.5 * (a0 + a1);
    const cplx c = point(tc, ac);
    double reach = 0.0;
    for (const cplx corner : {point(t0, a0), point(t0, a1), point(t1, a0), point(t1, a1)}) {
      reach = std::max(reach, std::abs(corner - c));
    }
    reach *= 1.05;  // the sides are arcs, not chords
    bool straddles = false;
    bool coarse = false;
    for (std::size_t j = 0; j < ins_.size(); ++j) {
      const double d = std::abs(c - ins_[j].z);
      if (d + reach <= plan_[j].disc) return 0.0;
      if (d - reach <= plan_[j].disc) straddles = true;
      if (reach > 0.2 * d) coarse = true;
    }
    if (straddles && depth >= kMaxDepth) {
      return inside_any_disc(c) ? 0.0 : density(tc, ac) * (t1 - t0) * (a1 - a0);
    }
    if (straddles || coarse) {
      return (*this)(t0, tc, a0, ac, depth + 1) + (*this)(t0, tc, ac, a1, depth + 1) +
             (*this)(tc, t1, a0, ac, depth + 1) + (*this)(tc, t1, ac, a1, depth + 1);
    }
    const GaussLegendreRule& rule = gauss_legendre(3);
    const double ht = 0.5 * (t1 - t0);
    const double ha = 0.5 * (a1 - a0);
    double acc = 0.0;
    for (int p = 0; p < 3; ++p) {
      for (int q = 0; q < 3; ++q) {
        acc += rule.weights[p] * rule.weights[q] *
               density(tc + ht * rule.nodes[p], ac + ha * rule.nodes[q]);
      }
    }
    return acc * ht * ha;
  }

 private:
  static constexpr int kMaxDepth = 14;

  cplx point(double t, double a) const {
    return std::polar(h_ == Hemisphere::inner ? std::exp(-t) : std::exp(t), a);
  }

  bool inside_any_disc(cplx x) const {
    for (std::size_t j = 0; j < ins_.size(); ++j) {
      if (std::abs(x - ins_[j].z) < plan_[j].disc) return true;
    }
    return false;
  }

  double density(double t, double a) const {
    const cplx x = point(t, a);
    double w = std::exp(-2.0 * (t - t_ref_));
    for (const Insertion& i : ins_) w *= std::pow(plus_norm(x) / std::abs(x - i.z), gamma_ * i.alpha);
    return w;
  }

  const std::vector<Insertion>& ins_;
  const std::vector<InsertionPlan>& plan_;
  double gamma_;
  Hemisphere h_;
  double t_ref_;
};

}  // namespace

int GridConfig::rows() const { return static_cast<int>(std::lround(t_max / dt)); }

double GridConfig::dtheta() const { return kTwoPi / angular; }

void GridConfig::validate() const {
  if (n_modes < 1 || n_modes > 1 << 16) throw ConditionError("grid: n_modes out of range");
  if (angular < 2 * n_modes) {
    throw ConditionError("grid: angular resolution must be at least 2 * n_modes");
  }
  if (!(dt > 0.0) || !(t_max > dt)) throw ConditionError("grid: need 0 < dt < t_max");
  if (rows() < 1) throw ConditionError("grid: no radial rows");
}

double truncated_variance(double t, int n_modes) { return t + harmonic_number(n_modes); }

double truncated_covariance(cplx z, cplx w, int n_modes) {
  const double t = log_radius(z);
  const double s = log_radius(w);
  const double dth = angle_of(z) - angle_of(w);
  const bool same = hemisphere_of(z) == hemisphere_of(w);
  double acc = same ? std::min(t, s) : 0.0;
  for (int n = n_modes; n >= 1; --n) {
    const double c = std::cos(n * dth) / n;
    double term = std::exp(-n * (t + s));
    if (same) term += std::exp(-n * std::abs(t - s)) - std::exp(-n * (t + s));
    acc += c * term;
  }
  return acc;
}

double GffSample::at(Hemisphere h, int row, int col) const {
  const auto& v = h == Hemisphere::inner ? inner : outer;
  return v.at(static_cast<std::size_t>(row) * grid.angular + col);
}

GffSample sample_gff(std::uint64_t seed, std::uint64_t index, const GridConfig& grid,
                     const std::vector<cplx>& probes) {
  const FieldSampler sampler(grid, probes, 0);
  auto ws = sampler.make_workspace();
  PhiloxStream rng(seed, index);
  sampler.draw(rng, ws);
  GffSample out;
  out.grid = grid;
  out.seed = seed;
  out.index = index;
  out.phi = ws.phi;
  const std::size_t cells = static_cast<std::size_t>(sampler.rows()) * sampler.cols();
  out.inner.assign(ws.field[0].get(), ws.field[0].get() + cells);
  out.outer.assign(ws.field[1].get(), ws.field[1].get() + cells);
  out.probes = probes;
  out.probe_values = ws.point_values;
  return out;
}

double gmc_weight(const GffSample& sample, double gamma, Hemisphere h, int row, int col) {
  const double t = (row + 0.5) * sample.grid.dt;
  const double var = truncated_variance(t, sample.grid.n_modes);
  const double x = sample.at(h, row, col);
  return std::exp(gamma * x - 0.5 * gamma * gamma * var - 2.0 * t) * sample.grid.dt *
         sample.grid.dtheta();
}

SeibergReport seiberg_check(const std::vector<double>& alphas, const LiouvilleParams& params) {
  const double Q = params.Q();
  SeibergReport r{true, 0.0, 0.0, ""};
  double sum = 0.0;
  double top = -std::numeric_limits<double>::infinity();
  for (double a : alphas) {
    sum += a;
    top = std::max(top, a);
  }
  r.sum_margin = sum - 2.0 * Q;
  r.max_margin = alphas.empty() ? 0.0 : Q - top;
  if (!(r.sum_margin > 0.0)) {
    r.passed = false;
    r.reason = "sum of alphas must exceed 2Q";
  }
  if (!(r.max_margin > 0.0)) {
    r.passed = false;
    r.reason += std::string(r.reason.empty() ? "" : "; ") + "every alpha must be below Q";
  }
  return r;
}

GmcEstimate correlation_mc(const std::vector<Insertion>& given,
                           const LiouvilleParams& params, const GmcConfig& config) {
  // Canonical order, so that the random draws attached to each insertion do
  // not depend on how the caller listed them.
  std::vector<Insertion> insertions = given;
  std::sort(insertions.begin(), insertions.end(), [](const Insertion& a, const Insertion& b) {
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    if (a.z.imag() != b.z.imag()) return a.z.imag() < b.z.imag();
    return a.alpha < b.alpha;
  });
  const GridConfig& grid = config.grid;
  grid.validate();
  const std::size_t n_ins = insertions.size();
  if (n_ins < 3) throw ConditionError("correlation_mc: needs at least three insertions");
  std::vector<double> alphas;
  for (const auto& ins : insertions) alphas.push_back(ins.alpha);
  const SeibergReport seiberg = seiberg_check(alphas, params);
  if (!seiberg.passed) throw ConditionError("Seiberg bounds violated: " + seiberg.reason);
  if (config.batches < 2) throw ConditionError("correlation_mc: needs at least two batches");
  if (config.n_samples < static_cast<std::uint64_t>(config.batches)) {
    throw ConditionError("correlation_mc: fewer samples than batches");
  }

  const double gamma = params.gamma();
  const double Q = params.Q();
  double alpha_sum = 0.0;
  for (double a : alphas) alpha_sum += a;
  const double s = (alpha_sum - 2.0 * Q) / gamma;
  const double dth = grid.dtheta();
  const double cell = std::max(dth, grid.dt);
  // Cells whose centre lies within this many cell sizes of an insertion are
  // integrated exactly against the singular factors instead of by midpoint.
  constexpr double kNearCells = 8.0;
  const int K = grid.rows();
  const int M = grid.angular;

  std::vector<InsertionPlan> plan(n_ins);
  std::vector<cplx> points;
  for (std::size_t i = 0; i < n_ins; ++i) {
    const cplx z = insertions[i].z;
    const double r = std::abs(z);
    const double t = log_radius(z);
    InsertionPlan& ip = plan[i];
    ip.alpha = insertions[i].alpha;
    ip.log_radius = t;
    if (!(r > 0.0) || t + grid.dt >= grid.t_max) {
      throw ConditionError("insertion lies outside the resolved radial range of the grid");
    }
    if (config.subgrid_correction) {
      ip.variance = truncated_variance(t, grid.n_modes);
      ip.disc = std::exp(-(ip.variance - 2.0 * std::log(plus_norm(z))));
      if (std::abs(r - 1.0) <= ip.disc) {
        throw ConditionError("insertion too close to the unit circle for the sub-grid correction");
      }
      const double p = 2.0 - gamma * ip.alpha;
      ip.inner = kTwoPi * std::pow(ip.disc, p);
      ip.nu = 2.0 * (Q - ip.alpha) / gamma;
      double g = std::pow(plus_norm(z), gamma * alpha_sum - 4.0);
      for (std::size_t j = 0; j < n_ins; ++j) {
        if (j != i) g *= std::pow(std::abs(z - insertions[j].z), -gamma * insertions[j].alpha);
      }
      ip.g = g;
    }
    points.push_back(z);
  }
  for (std::size_t i = 0; i < n_ins; ++i) {
    for (std::size_t j = i + 1; j < n_ins; ++j) {
      const double dist = std::abs(insertions[i].z - insertions[j].z);
      if (!(dist > plan[i].disc + plan[j].disc) || dist == 0.0) {
        throw ConditionError("insertions must be distinct and their sub-grid discs disjoint");
      }
    }
  }

  // Deterministic part of each cell's contribution to Z.
  std::array<std::vector<double>, 2> base;
  for (int h = 0; h < 2; ++h) {
    base[h].assign(static_cast<std::size_t>(K) * M, 0.0);
    for (int k = 0; k < K; ++k) {
      const double t = (k + 0.5) * grid.dt;
      const double var = truncated_variance(t, grid.n_modes);
      const double row_weight = std::exp(-2.0 * t - 0.5 * gamma * gamma * var) * grid.dt * dth;
      const CellIntegrator integrate(insertions, plan, gamma, static_cast<Hemisphere>(h), t);
      for (int m = 0; m < M; ++m) {
        const cplx x = cell_point(grid, static_cast<Hemisphere>(h), k, m);
        bool near = false;
        double w = row_weight;
        for (std::size_t i = 0; i < n_ins; ++i) {
          const double dist = std::abs(x - insertions[i].z);
          if (dist < kNearCells * cell * std::abs(x)) near = true;
          if (!config.subgrid_correction && dist < 1e-12) {
            throw ConditionError("insertion sits on a grid cell midpoint");
          }
          w *= std::pow(plus_norm(x) / dist, gamma * insertions[i].alpha);
        }
        if (config.subgrid_correction && near) {
          const double t0 = k * grid.dt;
          const double a0 = m * dth;
          w = row_weight * integrate(t0, t0 + grid.dt, a0, a0 + dth) / (grid.dt * dth);
        }
        base[h][static_cast<std::size_t>(k) * M + m] = w;
      }
    }
  }

  const int shift = ((config.rotation_steps % M) + M) % M;
  const FieldSampler sampler(grid, points, shift);
  const int B = config.batches;
  const std::uint64_t n = config.n_samples;
  std::vector<double> batch_sum(B, 0.0);
  std::vector<std::uint64_t> batch_count(B, 0);

  parallel_for(static_cast<std::size_t>(B), config.threads, [&](std::size_t b) {
    auto ws = sampler.make_workspace();
    const std::uint64_t lo = n * b / B;
    const std::uint64_t hi = n * (b + 1) / B;
    CompensatedSum<double> acc;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      PhiloxStream rng(config.seed, idx);
      sampler.draw(rng, ws);
      double Z = 0.0;
      for (int h = 0; h < 2; ++h) {
        const double* f = ws.field[h].get();
        const double* w = base[h].data();
        for (int k = 0; k < K; ++k) {
          const double* frow = f + static_cast<std::size_t>(k) * M;
          const double* wrow = w + static_cast<std::size_t>(k) * M;
          double row_sum = 0.0;
          // Column m of the rotated sample is column m - shift of the drawn one.
          for (int m = 0; m < shift; ++m) {
            if (wrow[m] != 0.0) row_sum += wrow[m] * std::exp(gamma * frow[m - shift + M]);
          }
          for (int m = shift; m < M; ++m) {
            if (wrow[m] != 0.0) row_sum += wrow[m] * std::exp(gamma * frow[m - shift]);
          }
          Z += row_sum;
        }
      }
      if (config.subgrid_correction) {
        for (std::size_t i = 0; i < n_ins; ++i) {
          const InsertionPlan& ip = plan[i];
          std::gamma_distribution<double> gamma_dist(ip.nu, 1.0);
          const double G = gamma_dist(rng);
          const double dufresne = 2.0 / (gamma * gamma * G);
          const double chaos =
              std::exp(gamma * ws.point_values[i] - 0.5 * gamma * gamma * ip.variance);
          Z += ip.g * chaos * ip.inner * dufresne;
        }
      }
      acc.add(std::exp(-s * std::log(Z)));
    }
    batch_sum[b] = acc.value();
    batch_count[b] = hi - lo;
  });

  double total = 0.0;
  for (int b = 0; b < B; ++b) total += batch_sum[b];
  const double mean = total / static_cast<double>(n);
  double spread = 0.0;
  for (int b = 0; b < B; ++b) {
    const double nb = static_cast<double>(batch_count[b]);
    const double dev = batch_sum[b] / nb - mean;
    spread += nb * nb * dev * dev;
  }
  const double moment_error =
      std::sqrt(spread * B / (B - 1.0)) / static_cast<double>(n);

  double pair = 1.0;
  for (std::size_t i = 0; i < n_ins; ++i) {
    for (std::size_t j = i + 1; j < n_ins; ++j) {
      pair *= std::pow(std::abs(insertions[i].z - insertions[j].z),
                       -insertions[i].alpha * insertions[j].alpha);
    }
  }
  const double prefactor =
      pair / gamma * std::pow(params.mu(), -s) * std::exp(std::lgamma(s));

  GmcEstimate est;
  est.value = prefactor * mean;
  est.std_error = prefactor * moment_error;
  est.n_samples = n;
  est.seed = config.seed;
  est.batches = B;
  est.s = s;
  est.moment = mean;
  est.moment_error = moment_error;
  est.prefactor = prefactor;
  est.insertions = given;
  est.gamma = gamma;
  est.mu = params.mu();
  est.config = config;
  return est;
}

MobiusMap MobiusMap::rotation(double theta) {
  const cplx half = std::polar(1.0, 0.5 * theta);
  return {half, 0.0, 0.0, 1.0 / half};
}

MobiusMap MobiusMap::dilation(double lambda) {
  const double root = std::sqrt(lambda);
  return {root, 0.0, 0.0, 1.0 / root};
}

MobiusReport mobius_check(const std::vector<Insertion>& insertions, const MobiusMap& psi,
                          const LiouvilleParams& params, const GmcConfig& config) {
  if (std::abs(psi.a * psi.d - psi.b * psi.c - 1.0) > 1e-12) {
    throw ConditionError("Mobius map must satisfy ad - bc = 1");
  }
  MobiusReport report{};
  report.original = correlation_mc(insertions, params, config);

  std::vector<Insertion> mapped;
  double factor = 1.0;
  for (const auto& ins : insertions) {
    mapped.push_back({psi(ins.z), ins.alpha});
    factor *= std::pow(std::abs(psi.derivative(ins.z)),
                       -2.0 * conformal_weight(ins.alpha, params.Q()));
  }
  report.covariance_factor = factor;

  GmcConfig mapped_config = config;
  if (psi.b == 0.0 && psi.c == 0.0 && std::abs(std::abs(psi.a / psi.d) - 1.0) < 1e-14) {
    const double steps = std::arg(psi.a / psi.d) / config.grid.dtheta();
    const double rounded = std::round(steps);
    if (std::abs(steps - rounded) < 1e-9) {
      mapped_config.rotation_steps = config.rotation_steps + static_cast<int>(rounded);
      report.coupled = true;
    }
  }
  report.mapped = correlation_mc(mapped, params, mapped_config);

  const double predicted = factor * report.original.value;
  const double diff = std::abs(report.mapped.value - predicted);
  const double sigma = std::hypot(report.mapped.std_error, factor * report.original.std_error);
  report.residual = diff / std::abs(report.mapped.value);
  report.combined_sigma = sigma / std::abs(report.mapped.value);
  report.z_score = sigma > 0.0 ? diff / sigma : 0.0;
  return report;
}

ThreePointComparison compare_three_point_dozz(double alpha, const LiouvilleParams& params,
                                              const GmcConfig& config, double radius) {
  std::vector<Insertion> ins;
  const double offset = 0.25 * config.grid.dtheta();
  for (int j = 0; j < 3; ++j) {
    ins.push_back({std::polar(radius, offset + kTwoPi * j / 3.0), alpha});
  }
  ThreePointComparison out{};
  out.estimate = correlation_mc(ins, params, config);
  const double delta = conformal_weight(alpha, params.Q());
  const double d = std::abs(ins[0].z - ins[1].z) * std::abs(ins[0].z - ins[2].z) *
                   std::abs(ins[1].z - ins[2].z);
  const double scale = std::pow(d, 2.0 * delta);
  out.structure_constant = out.estimate.value * scale;
  out.structure_error = out.estimate.std_error * scale;
  out.dozz_half = 0.5 * dozz(alpha, alpha, alpha, params).real();
  out.relative_difference = std::abs(out.structure_constant - out.dozz_half) / out.dozz_half;
  out.z_score = std::abs(out.structure_constant - out.dozz_half) / out.structure_error;
  return out;
}

GmcJobConfig parse_gmc_config(const std::string& json_text) {
  using nlohmann::json;
  GmcJobConfig job;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConditionError(std::string("GMC config is not valid JSON: ") + e.what());
  }
  try {
    job.gamma = j.value("gamma", job.gamma);
    job.mu = j.value("mu", job.mu);
    for (const auto& item : j.at("insertions")) {
      cplx z;
      const auto& jz = item.at("z");
      if (jz.is_string()) {
        z = parse_complex(jz.get<std::string>());
      } else if (jz.is_array() && jz.size() == 2) {
        z = cplx(jz[0].get<double>(), jz[1].get<double>());
      } else {
        z = cplx(jz.get<double>(), 0.0);
      }
      job.insertions.push_back({z, item.at("alpha").get<double>()});
    }
    GmcConfig& c = job.config;
    if (j.contains("grid")) {
      const auto& g = j["grid"];
      c.grid.n_modes = g.value("n_modes", c.grid.n_modes);
      c.grid.angular = g.value("angular", c.grid.angular);
      c.grid.dt = g.value("dt", c.grid.dt);
      c.grid.t_max = g.value("t_max", c.grid.t_max);
    }
    c.n_samples = j.value("samples", c.n_samples);
    c.seed = j.value("seed", c.seed);
    c.batches = j.value("batches", c.batches);
    c.subgrid_correction = j.value("subgrid_correction", c.subgrid_correction);
  } catch (const json::exception& e) {
    throw ConditionError(std::string("GMC config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConditionError(std::string("GMC config: ") + e.what());
  }
  return job;
}

std::string gmc_estimate_json(const GmcEstimate& est) {
  nlohmann::ordered_json j;
  j["value"] = est.value;
  j["std_error"] = est.std_error;
  j["n_samples"] = est.n_samples;
  j["seed"] = est.seed;
  j["batches"] = est.batches;
  j["s"] = est.s;
  j["moment"] = est.moment;
  j["moment_error"] = est.moment_error;
  j["prefactor"] = est.prefactor;
  j["gamma"] = est.gamma;
  j["mu"] = est.mu;
  nlohmann::ordered_json ins = nlohmann::ordered_json::array();
  for (const auto& i : est.insertions) {
    ins.push_back({{"z", {i.z.real(), i.z.imag()}}, {"alpha", i.alpha}});
  }
  j["insertions"] = ins;
  j["grid"] = {{"n_modes", est.config.grid.n_modes},
               {"angular", est.config.grid.angular},
               {"dt", est.config.grid.dt},
               {"t_max", est.config.grid.t_max}};
  j["subgrid_correction"] = est.config.subgrid_correction;
  j["rotation_steps"] = est.config.rotation_steps;
  j["library_version"] = kVersion;
  return j.dump(2);
}

}  // namespace liouville

#include "liouville/virasoro.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "liouville/error.hpp"

namespace liouville {

namespace {

using Word = std::vector<int>;

class WordReducer {
 public:
  const Poly2& reduce(const Word& w) {
    if (auto it = memo_.find(w); it != memo_.end()) return it->second;
    Poly2 value = compute(w);
    return memo_.emplace(w, std::move(value)).first->second;
  }

 private:
  Poly2 compute(const Word& w) {
    if (w.empty()) return Poly2(mpq_class(1));
    if (std::accumulate(w.begin(), w.end(), 0) != 0) return {};
    // Positive modes annihilate the vacuum on the right, negative modes on the left.
    if (w.back() > 0 || w.front() < 0) return {};
    if (w.back() == 0) return Poly2::delta() * reduce(Word(w.begin(), w.end() - 1));
    if (w.front() == 0) return Poly2::delta() * reduce(Word(w.begin() + 1, w.end()));
    // Move the rightmost positive mode one step right:
    // L_a L_b = L_b L_a + (a - b) L_{a+b} + (c/12)(a^3 - a) delta_{a+b,0}.
    std::size_t i = w.size() - 1;
    while (w[i] <= 0) --i;
    const int a = w[i];
    const int b = w[i + 1];
    Word swapped = w;
    std::swap(swapped[i], swapped[i + 1]);
    Poly2 out = reduce(swapped);
    Word merged(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
    merged.push_back(a + b);
    merged.insert(merged.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 2, w.end());
    out += reduce(merged) * mpq_class(a - b);
    if (a + b == 0) {
      Word rest(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
      rest.insert(rest.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 2, w.end());
      mpq_class k(static_cast<long>(a) * a * a - a, 12);
      k.canonicalize();
      out += Poly2::central_charge() * reduce(rest) * k;
    }
    return out;
  }

  std::map<Word, Poly2> memo_;
};

WordReducer& thread_reducer() {
  thread_local WordReducer reducer;
  return reducer;
}

Word pairing_word(const YoungDiagram& bra, const YoungDiagram& ket) {
  Word w(bra.parts().begin(), bra.parts().end());
  for (auto it = ket.parts().rbegin(); it != ket.parts().rend(); ++it) w.push_back(-*it);
  return w;
}

mpq_class exact_rational(double x) {
  mpq_class q(x);  // exact: every finite double is a dyadic rational
  q.canonicalize();
  return q;
}

double abs_d(const mpq_class& q) { return std::abs(q.get_d()); }

}  // namespace

Poly2 reduce_word(const std::vector<int>& word) { return thread_reducer().reduce(word); }

ShapovalovMatrix::ShapovalovMatrix(int level) : level_(level), diagrams_(young_diagrams(level)) {
  const std::size_t n = diagrams_.size();
  entries_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      entries_[i * n + j] = reduce_word(pairing_word(diagrams_[i], diagrams_[j]));
      entries_[j * n + i] = entries_[i * n + j];
    }
  }
  numeric_.reserve(entries_.size());
  for (const Poly2& p : entries_) numeric_.emplace_back(p);
}

Eigen::MatrixXcd ShapovalovMatrix::evaluate(std::complex<double> delta, double c) const {
  const auto n = static_cast<Eigen::Index>(dim());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = numeric_[i * n + j](delta, c);
  }
  return m;
}

Eigen::MatrixXd ShapovalovMatrix::evaluate(double delta, double c) const {
  const auto n = static_cast<Eigen::Index>(dim());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = numeric_[i * n + j](delta, c);
  }
  return m;
}

std::vector<mpq_class> ShapovalovMatrix::evaluate_exact(const mpq_class& delta,
                                                        const mpq_class& c) const {
  std::vector<mpq_class> out;
  out.reserve(entries_.size());
  for (const Poly2& p : entries_) out.push_back(p.evaluate(delta, c));
  return out;
}

std::string ShapovalovMatrix::to_json() const {
  nlohmann::ordered_json j;
  j["level"] = level_;
  nlohmann::ordered_json labels = nlohmann::ordered_json::array();
  for (const auto& d : diagrams_) labels.push_back(d.to_string());
  j["rows"] = labels;
  j["columns"] = labels;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < dim(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < dim(); ++k) row.push_back(entry(i, k).to_string_map());
    rows.push_back(row);
  }
  j["entries"] = rows;
  return j.dump(2);
}

const ShapovalovMatrix& shapovalov_matrix(int level) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<ShapovalovMatrix>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[level];
  if (!slot) slot = std::make_unique<ShapovalovMatrix>(level);
  return *slot;
}

mpq_class exact_determinant(std::vector<mpq_class> m, std::size_t n) {
  mpq_class det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot * n + col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m[pivot * n + k], m[col * n + k]);
      det = -det;
    }
    const mpq_class p = m[col * n + col];
    det *= p;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (m[row * n + col] == 0) continue;
      const mpq_class f = m[row * n + col] / p;
      for (std::size_t k = col; k < n; ++k) m[row * n + k] -= f * m[col * n + k];
    }
  }
  return det;
}

KacReport kac_check(int level, const LiouvilleParams& params, double tolerance) {
  if (level < 1) throw ConditionError("kac_check: level must be at least 1");
  const ShapovalovMatrix& F = shapovalov_matrix(level);
  const std::size_t n = F.dim();

  const mpq_class g = exact_rational(params.gamma());
  const mpq_class Q = mpq_class(2) / g + g / 2;
  const mpq_class c = 1 + 6 * Q * Q;
  const double c_d = params.central_charge();

  KacReport report{};
  report.level = level;
  report.gamma = params.gamma();
  report.passed = true;

  struct ExactRoot {
    mpq_class delta;
    int multiplicity;
  };
  std::vector<ExactRoot> exact_roots;
  auto det_at = [&](const mpq_class& d) { return exact_determinant(F.evaluate_exact(d, c), n); };

  for (int r = 1; r <= level; ++r) {
    for (int s = 1; r * s <= level; ++s) {
      const mpq_class alpha = Q - r * g / 2 - 2 * s / g;
      const mpq_class delta = alpha / 2 * (Q - alpha / 2);
      const int mult = static_cast<int>(partition_count(level - r * s));
      exact_roots.push_back({delta, mult});

      KacRoot root{};
      root.r = r;
      root.s = s;
      root.multiplicity = mult;
      root.delta = delta.get_d();
      root.det_exact_abs = abs_d(det_at(delta));
      const Eigen::MatrixXd m = F.evaluate(root.delta, c_d);
      root.det_double_abs = std::abs(m.fullPivLu().determinant());
      root.det_double_scale = std::pow(std::max(1.0, m.cwiseAbs().maxCoeff()),
                                       static_cast<double>(n));
      if (root.det_exact_abs > tolerance) report.passed = false;
      report.roots.push_back(root);
      report.expected_degree += mult;
    }
  }

  auto kac_product = [&](const mpq_class& d) {
    mpq_class prod = 1;
    for (const auto& root : exact_roots) {
      for (int k = 0; k < root.multiplicity; ++k) prod *= d - root.delta;
    }
    return prod;
  };

  // Fit kappa at a generic rational point, then test the factorization elsewhere.
  const mpq_class fit_point(7, 3);
  report.kappa = det_at(fit_point) / kac_product(fit_point);
  double residual = 0.0;
  for (const mpq_class& d : {mpq_class(-5, 7), mpq_class(11, 13), mpq_class(29, 4),
                            mpq_class(-101, 17)}) {
    const mpq_class lhs = det_at(d);
    const mpq_class rhs = report.kappa * kac_product(d);
    const mpq_class diff = abs(lhs - rhs);
    const mpq_class scale = std::max(abs(lhs), abs(rhs));
    if (scale != 0) residual = std::max(residual, mpq_class(diff / scale).get_d());
  }
  report.factorization_residual = residual;
  if (residual > tolerance) report.passed = false;

  // Degree of det F in Delta via exact Newton interpolation at fixed c.
  const int samples = report.expected_degree + 3;
  std::vector<mpq_class> xs, coeffs;
  for (int k = 0; k < samples; ++k) {
    xs.emplace_back(k, 1);
    coeffs.push_back(det_at(xs.back()));
  }
  for (int j = 1; j < samples; ++j) {
    for (int k = samples - 1; k >= j; --k) {
      coeffs[k] = (coeffs[k] - coeffs[k - 1]) / (xs[k] - xs[k - j]);
    }
  }
  report.det_degree = -1;
  for (int k = samples - 1; k >= 0; --k) {
    if (coeffs[k] != 0) {
      report.det_degree = k;
      break;
    }
  }
  if (report.det_degree != report.expected_degree) report.passed = false;
  return report;
}

ShapovalovInverse invert_shapovalov(int level, double delta_p, double c) {
  const Eigen::MatrixXd F = shapovalov_matrix(level).evaluate(delta_p, c);
  // Symmetric diagonal scaling: entries span many orders of magnitude when
  // Delta is large, and the unscaled factorization loses definiteness to rounding.
  const Eigen::VectorXd diag = F.diagonal();
  if ((diag.array() <= 0.0).any()) {
    std::ostringstream os;
    os << "Shapovalov matrix at level " << level << " has a non-positive diagonal at Delta="
       << delta_p << ", c=" << c;
    throw NotPositiveDefiniteError(os.str());
  }
  const Eigen::VectorXd s = diag.array().rsqrt();
  const Eigen::MatrixXd scaled = s.asDiagonal() * F * s.asDiagonal();
  Eigen::LLT<Eigen::MatrixXd> llt(scaled);
  if (llt.info() != Eigen::Success) {
    std::ostringstream os;
    os << "Shapovalov matrix at level " << level << " is not positive definite at Delta="
       << delta_p << ", c=" << c;
    throw NotPositiveDefiniteError(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(scaled, Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  if (ev.minCoeff() <= 0.0) {
    throw NotPositiveDefiniteError("Shapovalov matrix has a non-positive eigenvalue");
  }
  ShapovalovInverse out;
  out.inverse = s.asDiagonal() *
                llt.solve(Eigen::MatrixXd::Identity(F.rows(), F.cols())) * s.asDiagonal();
  out.condition_number = ev.maxCoeff() / ev.minCoeff();
  return out;
}

}  // namespace liouville

#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

#include "liouville/params.hpp"
#include "liouville/partitions.hpp"
#include "liouville/polynomial.hpp"

namespace liouville {

/// Default highest level for which Shapovalov data is assembled.
inline constexpr int kDefaultMaxLevel = 8;

/// <vac| L_{t_1} ... L_{t_k} |vac> as an exact polynomial in (Delta, c).
/// The rightmost generator acts first. Memoized per thread.
Poly2 reduce_word(const std::vector<int>& word);

/// Gram matrix of the level-N descendants, rows and columns indexed by
/// young_diagrams(N). Entries are exact.
class ShapovalovMatrix {
 public:
  explicit ShapovalovMatrix(int level);

  int level() const noexcept { return level_; }
  std::size_t dim() const noexcept { return diagrams_.size(); }
  const std::vector<YoungDiagram>& diagrams() const noexcept { return diagrams_; }
  const Poly2& entry(std::size_t i, std::size_t j) const { return entries_[i * dim() + j]; }

  Eigen::MatrixXcd evaluate(std::complex<double> delta, double c) const;
  Eigen::MatrixXd evaluate(double delta, double c) const;
  /// Exact evaluation at rational (Delta, c).
  std::vector<mpq_class> evaluate_exact(const mpq_class& delta, const mpq_class& c) const;

  /// JSON with diagram-labelled rows/columns and {"i,j": "p/q"} entries.
  std::string to_json() const;

 private:
  int level_;
  std::vector<YoungDiagram> diagrams_;
  std::vector<Poly2> entries_;
  std::vector<NumericPoly2> numeric_;
};

/// Shared, lazily built matrix for a level. Thread-safe.
const ShapovalovMatrix& shapovalov_matrix(int level);

/// Determinant of a dense square matrix of rationals (Gaussian elimination).
mpq_class exact_determinant(std::vector<mpq_class> m, std::size_t n);

struct KacRoot {
  int r;
  int s;
  int multiplicity;      // p(N - rs)
  double delta;          // Delta_{alpha_{r,s}} in binary64
  double det_exact_abs;  // |det F(Delta_rs)| in exact arithmetic
  double det_double_abs; // |det F| evaluated in binary64 at the rounded root
  double det_double_scale;  // max |entry| ^ dim, for judging the binary64 value
};

struct KacReport {
  int level;
  double gamma;
  std::vector<KacRoot> roots;
  mpq_class kappa;             // fitted leading constant
  double factorization_residual;  // max relative mismatch on the sample points
  int det_degree;              // degree of det F in Delta at fixed c
  int expected_degree;         // sum over rs <= N of p(N - rs)
  bool passed;
};

/// Verifies the Kac factorization det F_N = kappa_N prod (Delta - Delta_rs)^p(N-rs).
/// gamma is converted exactly to a rational, so the roots are exact.
KacReport kac_check(int level, const LiouvilleParams& params, double tolerance);

struct ShapovalovInverse {
  Eigen::MatrixXd inverse;
  double condition_number;  // of the diagonally scaled matrix
};

/// F^{-1} at a spectrum-line weight via Cholesky. Throws
/// NotPositiveDefiniteError when the factorization fails.
ShapovalovInverse invert_shapovalov(int level, double delta_p, double c);

}  // namespace liouville

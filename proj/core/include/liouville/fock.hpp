#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "liouville/params.hpp"
#include "liouville/partitions.hpp"

namespace liouville {

/// Highest Gaussian mode index a FockPolynomial can carry.
inline constexpr int kMaxFockMode = 16;

/// Polynomial in the real Gaussian modes x_n, y_n (1 <= n <= kMaxFockMode)
/// with complex coefficients. The complex modes are
/// phi_n = (x_n + i y_n) / (2 sqrt n) and phi_{-n} = conj(phi_n).
class FockPolynomial {
 public:
  /// Exponents laid out as (x_1, y_1, x_2, y_2, ...).
  using Key = std::array<std::uint8_t, 2 * kMaxFockMode>;
  using Terms = std::map<Key, cplx>;

  FockPolynomial() = default;
  static FockPolynomial constant(cplx value);
  static FockPolynomial one() { return constant(1.0); }
  static FockPolynomial x(int n);
  static FockPolynomial y(int n);
  /// phi_n for n > 0, phi_{-|n|} = conj(phi_|n|) for n < 0.
  static FockPolynomial phi(int n);

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Highest mode with a non-zero exponent; 0 for constants.
  int n_max() const;
  cplx coefficient(const Key& key) const;
  /// Largest coefficient magnitude.
  double max_abs() const;

  void add_term(const Key& key, cplx coeff);
  FockPolynomial& operator+=(const FockPolynomial& other);
  FockPolynomial& operator-=(const FockPolynomial& other);
  FockPolynomial& operator*=(cplx s);
  friend FockPolynomial operator+(FockPolynomial a, const FockPolynomial& b) { return a += b; }
  friend FockPolynomial operator-(FockPolynomial a, const FockPolynomial& b) { return a -= b; }
  friend FockPolynomial operator*(FockPolynomial a, cplx s) { return a *= s; }
  friend FockPolynomial operator*(cplx s, FockPolynomial a) { return a *= s; }
  friend FockPolynomial operator*(const FockPolynomial& a, const FockPolynomial& b);

  /// Multiplication by x_n or y_n and the corresponding partial derivatives.
  FockPolynomial times_x(int n) const;
  FockPolynomial times_y(int n) const;
  FockPolynomial d_x(int n) const;
  FockPolynomial d_y(int n) const;

  cplx evaluate(const std::vector<double>& xs, const std::vector<double>& ys) const;

 private:
  FockPolynomial times_var(int slot) const;
  FockPolynomial d_var(int slot) const;
  Terms terms_;
};

/// The two commuting Heisenberg families: the standard one and its twin,
/// obtained by exchanging phi_n with phi_{-n}.
enum class ModeFamily { standard, twin };

/// A_n for n != 0: A_n = (i/2) d_n, A_{-n} = (i/2)(d_{-n} - 2n phi_n), n > 0.
FockPolynomial apply_A(int n, const FockPolynomial& state,
                       ModeFamily family = ModeFamily::standard);

/// Segal-Sugawara generator L_n^{0,alpha}.
FockPolynomial apply_L(int n, cplx alpha, const LiouvilleParams& params,
                       const FockPolynomial& state, ModeFamily family = ModeFamily::standard);

/// Q_{alpha,nu,nutilde} = L_{-nu} Ltilde_{-nutilde} 1 with
/// L_{-nu} = L_{-nu_k} ... L_{-nu_1}.
FockPolynomial descendant_poly(cplx alpha, const LiouvilleParams& params, const YoungDiagram& nu,
                               const YoungDiagram& nutilde);

/// E[A conj(B)] for i.i.d. standard Gaussian modes; linear in A,
/// conjugate-linear in B.
cplx fock_inner(const FockPolynomial& a, const FockPolynomial& b);

/// Coefficients in the orthonormal Hermite basis psi_kl.
FockPolynomial::Terms hermite_coefficients(const FockPolynomial& p);

/// P = sum_n n (X_n^* X_n + Y_n^* Y_n), acting as n(x d_x - d_x^2) per variable.
FockPolynomial apply_number_operator(const FockPolynomial& state);

/// psi_kl = prod_n He_{k_n}(x_n) He_{l_n}(y_n) / sqrt(k_n! l_n!).
struct HermiteState {
  std::vector<int> k;  // k[n-1] is the degree in x_n
  std::vector<int> l;  // l[n-1] is the degree in y_n

  FockPolynomial polynomial() const;
  /// |k| + |l| with |k| = sum n k_n.
  int eigenvalue() const;
};

/// A descendant label (nu, nutilde) for Gram-matrix assembly.
struct DescendantLabel {
  YoungDiagram nu;
  YoungDiagram nutilde;
};

/// All labels with |nu| + |nutilde| <= total_level, grouped by (|nu|, |nutilde|).
std::vector<DescendantLabel> descendant_labels(int total_level);

/// G[i][j] = fock_inner(Q_{alpha, labels[j]}, Q_{2Q - conj(alpha), labels[i]}),
/// which equals F_alpha(nu_i, nu_j) F_alpha(nut_i, nut_j) on matching levels.
Eigen::MatrixXcd fock_gram(cplx alpha, const LiouvilleParams& params,
                           const std::vector<DescendantLabel>& labels);

}  // namespace liouville

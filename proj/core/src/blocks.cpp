#include "liouville/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "liouville/error.hpp"
#include "liouville/virasoro.hpp"

namespace liouville {

BlockParams BlockParams::from_alphas(double a1, double a2, double a3, double a4, double P,
                                     const LiouvilleParams& params) {
  const double Q = params.Q();
  return {conformal_weight(a1, Q), conformal_weight(a2, Q), conformal_weight(a3, Q),
          conformal_weight(a4, Q), spectrum_weight(P, Q),   params.central_charge()};
}

cplx v_weight(cplx d, cplx dprime, cplx dsecond, const YoungDiagram& nu) {
  cplx prod = 1.0;
  int prefix = 0;
  for (int part : nu.parts()) {
    prod *= static_cast<double>(part) * dprime - d + dsecond + static_cast<double>(prefix);
    prefix += part;
  }
  return prod;
}

cplx beta_n(int n, const BlockParams& p, BetaMethod method) {
  if (n < 0) throw std::invalid_argument("beta_n: level must be non-negative");
  if (n == 0) return 1.0;
  const ShapovalovMatrix& F = shapovalov_matrix(n);
  const auto dim = static_cast<Eigen::Index>(F.dim());
  Eigen::VectorXcd left(dim), right(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    left(i) = v_weight(p.d1, p.d2, p.dP, F.diagrams()[i]);
    right(i) = v_weight(p.d4, p.d3, p.dP, F.diagrams()[i]);
  }
  if (p.dP.imag() == 0.0) {
    const double dP = p.dP.real();
    if (method == BetaMethod::inverse) {
      const Eigen::MatrixXcd inv = invert_shapovalov(n, dP, p.c).inverse.cast<cplx>();
      return left.transpose() * inv * right;
    }
    const Eigen::MatrixXd m = F.evaluate(dP, p.c);
    const Eigen::VectorXd diag = m.diagonal();
    if ((diag.array() <= 0.0).any()) {
      throw NotPositiveDefiniteError("beta_n: Shapovalov matrix is not positive definite");
    }
    const Eigen::VectorXd s = diag.array().rsqrt();
    Eigen::LLT<Eigen::MatrixXd> llt(s.asDiagonal() * m * s.asDiagonal());
    if (llt.info() != Eigen::Success) {
      throw NotPositiveDefiniteError("beta_n: Shapovalov matrix is not positive definite");
    }
    const Eigen::VectorXcd x = llt.solve(Eigen::VectorXcd(s.cast<cplx>().cwiseProduct(right)));
    return left.transpose() * s.cast<cplx>().cwiseProduct(x);
  }
  const Eigen::MatrixXcd m = F.evaluate(p.dP, p.c);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
  if (method == BetaMethod::inverse) {
    return left.transpose() * lu.inverse() * right;
  }
  return left.transpose() * lu.solve(right);
}

std::vector<cplx> block_coefficients(const BlockParams& params, int truncation,
                                     BetaMethod method) {
  std::vector<cplx> beta;
  beta.reserve(static_cast<std::size_t>(truncation) + 1);
  for (int n = 0; n <= truncation; ++n) beta.push_back(beta_n(n, params, method));
  return beta;
}

BlockValue block_eval(cplx z, const std::vector<cplx>& beta) {
  if (!(std::abs(z) < 1.0)) throw ConditionError("block_eval: requires |z| < 1");
  if (beta.empty()) throw std::invalid_argument("block_eval: no coefficients");
  const int N = static_cast<int>(beta.size()) - 1;
  cplx value = 0.0;
  cplx zn = 1.0;
  for (int n = 0; n <= N; ++n) {
    value += beta[n] * zn;
    if (n < N) zn *= z;
  }
  double rate = 0.0;
  for (int n = std::max(1, N / 2); n <= N; ++n) {
    const double prev = std::abs(beta[n - 1]);
    if (prev > 0.0) rate = std::max(rate, std::abs(beta[n]) / prev);
  }
  const double az = std::abs(z);
  BlockValue out{value, 0.0, rate, rate * az >= 1.0};
  if (N == 0 || az == 0.0) return out;
  out.tail_estimate = out.divergent ? std::numeric_limits<double>::infinity()
                                    : std::abs(beta[N] * zn) * az / (1.0 - az * rate);
  return out;
}

BlockValue block_eval(cplx z, const BlockParams& params, int truncation) {
  return block_eval(z, block_coefficients(params, truncation));
}

std::vector<double> radius_diagnostic(const BlockParams& params, int truncation) {
  const std::vector<cplx> beta = block_coefficients(params, truncation);
  std::vector<double> out;
  for (int n = 1; n <= truncation; ++n) out.push_back(std::pow(std::abs(beta[n]), 1.0 / n));
  return out;
}

void write_block_csv(std::ostream& os, const std::vector<cplx>& beta) {
  os << "n,re_beta,im_beta,root_abs\n";
  os.precision(17);
  for (std::size_t n = 0; n < beta.size(); ++n) {
    const double root = n == 0 ? 1.0 : std::pow(std::abs(beta[n]), 1.0 / static_cast<double>(n));
    os << n << ',' << beta[n].real() << ',' << beta[n].imag() << ',' << root << '\n';
  }
}

}  // namespace liouville

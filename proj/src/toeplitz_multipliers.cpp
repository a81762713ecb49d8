#include "opschur/toeplitz_multipliers.hpp"

#include <algorithm>

namespace opschur {

OpMatrix build_toeplitz(const OpMeasure& mu, Eigen::Index n) {
  if (n < 1) throw std::invalid_argument("build_toeplitz: truncation must be positive");
  // one coefficient per diagonal offset l = j - k in [-(n-1), n-1]
  std::vector<Operator> diag(static_cast<std::size_t>(2 * n - 1));
  for (Eigen::Index l = -(n - 1); l <= n - 1; ++l)
    diag[static_cast<std::size_t>(l + n - 1)] = fourier(mu, static_cast<int>(l));
  OpMatrix a(n, n, mu.dim());
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index j = 0; j < n; ++j)
      a.set_block(k, j, diag[static_cast<std::size_t>(j - k + n - 1)]);
  return a;
}

std::vector<double> toeplitz_norm_ladder(const OpMeasure& mu, const std::vector<int>& ns) {
  if (!mu.is_density())
    throw std::domain_error("toeplitz_norm_ladder: density representation required");
  std::vector<double> out;
  out.reserve(ns.size());
  for (int n : ns) out.push_back(opnorm(build_toeplitz(mu, n)));
  return out;
}

Eigen::MatrixXcd compress(const OpMatrix& a, const HVector& x0, const HVector& y0) {
  if (x0.size() != a.dim() || y0.size() != a.dim())
    throw std::invalid_argument("compress: dimension mismatch");
  Eigen::MatrixXcd g(a.rows(), a.cols());
  for (Eigen::Index k = 0; k < a.rows(); ++k)
    for (Eigen::Index j = 0; j < a.cols(); ++j) g(k, j) = pairing(a.block(k, j), x0, y0);
  return g;
}

OpMatrix embed_scalar(const Eigen::MatrixXcd& b, const HVector& z0) {
  OpMatrix a(b.rows(), b.cols(), z0.size());
  const Operator zz = rank_one(z0, z0);
  for (Eigen::Index k = 0; k < b.rows(); ++k)
    for (Eigen::Index j = 0; j < b.cols(); ++j) a.set_block(k, j, b(k, j) * zz);
  return a;
}

namespace {

// G(t) = sum_k (sum_j e^{i(j-k)t} S_kj x_j) (x) y_k
TensorElement action_field_at(const OpMatrix& b, const HSeq& x, const HSeq& y, double t) {
  TensorElement u;
  for (Eigen::Index k = 0; k < b.rows(); ++k) {
    HVector v = HVector::Zero(b.dim());
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      v += unit_phase(static_cast<double>(j - k) * t) * (b.block(k, j) * x[j]);
    u.add_term(std::move(v), y[k]);
  }
  return u;
}

// coefficient version: tensor at frequency l = j - k collects (S_kj x_j, y_k)
TrigPoly<TensorElement> action_poly(const OpMatrix& b, const HSeq& x, const HSeq& y) {
  TrigPoly<TensorElement> poly;
  for (Eigen::Index k = 0; k < b.rows(); ++k)
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      TensorElement term;
      term.add_term(b.block(k, j) * x[j], y[k]);
      poly.add_coeff(static_cast<int>(j - k), term);
    }
  return poly;
}

}  // namespace

Complex schur_action_rhs(const OpMeasure& mu, const OpMatrix& b, const HSeq& x, const HSeq& y) {
  if (x.len() != b.cols() || y.len() != b.rows() || x.dim() != b.dim() || y.dim() != b.dim())
    throw std::invalid_argument("schur_action_rhs: shape mismatch");
  if (b.dim() != mu.dim()) throw std::invalid_argument("schur_action_rhs: dimension mismatch");
  if (mu.is_discrete()) {
    const auto& rep = mu.as_discrete();
    Complex acc = 0.0;
    for (std::size_t i = 0; i < rep.angles.size(); ++i)
      acc += tensor_pairing(rep.weights[i], action_field_at(b, x, y, rep.angles[i]));
    return acc;
  }
  return psi_pair(mu, action_poly(b, x, y));
}

double multiplier_upper_bound(const OpMeasure& mu) { return variation(mu); }

TrigPoly<TensorElement> multiplier_action_poly(const OpMeasure& nu, const HSeq& x, const HSeq& y) {
  if (x.dim() != nu.dim() || y.dim() != nu.dim())
    throw std::invalid_argument("multiplier_action_poly: dimension mismatch");
  TrigPoly<TensorElement> poly;
  for (Eigen::Index k = 0; k < y.len(); ++k)
    for (Eigen::Index j = 0; j < x.len(); ++j) {
      const int l = static_cast<int>(j - k);
      TensorElement term;
      term.add_term(fourier(nu, l) * x[j], y[k]);
      poly.add_coeff(l, term);
    }
  return poly;
}

std::function<TensorElement(double)> build_tensor_field(const OpMeasure& nu, const HSeq& x,
                                                        const HSeq& y) {
  auto poly = multiplier_action_poly(nu, x, y);
  return [poly](double t) { return poly.eval(t); };
}

double msot_membership(const OpMeasure& mu, const HVector& x,
                       const std::vector<double>& r_ladder, const Grid& grid) {
  const HMeasure mx = mu_x(mu, x);
  double best = 0.0;
  for (double r : r_ladder) best = std::max(best, poisson_l1(mx, r, grid));
  return best;
}

double msot_membership(const OpMeasure& mu, const HVector& x,
                       const std::vector<double>& r_ladder) {
  const HMeasure mx = mu_x(mu, x);
  double best = 0.0;
  for (double r : r_ladder) best = std::max(best, poisson_l1(mx, r));
  return best;
}

}  // namespace opschur

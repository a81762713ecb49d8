#include "opschur/operator_core.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "opschur/rng.hpp"

namespace opschur {

namespace {

constexpr double kRqTol = 1e-12;
constexpr int kMaxIters = 100000;
constexpr int kRestarts = 3;
constexpr std::uint64_t kPowerSeed = 0x70776974657261ull;

// Gram matrices are formed explicitly up to this size (one matvec per
// iteration); above it the iteration applies A and A^H separately.
constexpr Eigen::Index kGramCutoff = 1024;

struct PowerResult {
  double lambda = 0.0;  // best lower estimate of lambda_max(A^H A)
  HVector v;            // corresponding unit iterate (right singular side)
};

// One power-iteration run on the Gram operator v -> A^H (A v) from a given
// start, Rayleigh-quotient convergence test.
PowerResult power_run(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd* gram,
                      HVector v) {
  double nv = v.norm();
  if (nv == 0.0) return {};
  v /= nv;
  HVector w(a.rows()), u(v.size());
  double rho = 0.0;
  double rho_prev = -1.0;
  int settled = 0;
  for (int it = 0; it < kMaxIters; ++it) {
    if (gram) {
      u.noalias() = (*gram) * v;
      rho = std::real(v.dot(u));
    } else {
      w.noalias() = a * v;
      u.noalias() = a.adjoint() * w;
      rho = w.squaredNorm();
    }
    double un = u.norm();
    // ||B v|| >= v^H B v for unit v, still a lower estimate of lambda_max.
    rho = std::max(rho, un);
    if (std::abs(rho - rho_prev) <= kRqTol * std::max(rho, 1e-300)) {
      if (++settled >= 2) {
        rho_prev = rho;
        break;
      }
    } else {
      settled = 0;
    }
    rho_prev = rho;
    if (un == 0.0) break;  // v in the null space
    v = u / un;
  }
  return {rho_prev, std::move(v)};
}

PowerResult power_best(const Eigen::MatrixXcd& a) {
  // Iterate on the thin side so the Gram operator is as small as possible.
  const bool transpose = a.rows() < a.cols();
  Eigen::MatrixXcd at;
  const Eigen::MatrixXcd& m = transpose ? (at = a.adjoint()) : a;

  Eigen::MatrixXcd gram;
  const Eigen::MatrixXcd* gram_ptr = nullptr;
  if (m.cols() <= kGramCutoff) {
    gram.noalias() = m.adjoint() * m;
    gram_ptr = &gram;
  }

  PowerResult best = power_run(m, gram_ptr, HVector::Ones(m.cols()));
  for (int r = 0; r < kRestarts; ++r) {
    Rng rng(substream(kPowerSeed, static_cast<std::uint64_t>(r)));
    PowerResult cand = power_run(m, gram_ptr, random_hvector(rng, m.cols()));
    if (cand.lambda > best.lambda) best = std::move(cand);
  }
  if (transpose && best.v.size() != 0) {
    // Map the left singular iterate back to a right one: v_right ~ A^H u.
    HVector vr = a.adjoint() * best.v;
    double n = vr.norm();
    if (n > 0.0) best.v = vr / n;
  }
  return best;
}

}  // namespace

double spectral_norm(const Eigen::MatrixXcd& a) {
  if (a.size() == 0) return 0.0;
  if (a.rows() == 1 && a.cols() == 1) return std::abs(a(0, 0));
  if (a.norm() == 0.0) return 0.0;
  return std::sqrt(power_best(a).lambda);
}

std::pair<double, HVector> top_right_singular(const Eigen::MatrixXcd& a) {
  if (a.size() == 0 || a.norm() == 0.0)
    return {0.0, HVector::Unit(std::max<Eigen::Index>(a.cols(), 1), 0)};
  PowerResult r = power_best(a);
  if (r.v.size() == 0) r.v = HVector::Unit(a.cols(), 0);
  return {std::sqrt(r.lambda), std::move(r.v)};
}

Operator tensor_matrix(const TensorElement& u) {
  if (u.empty()) return Operator();
  const Eigen::Index d = u.dim();
  Operator m = Operator::Zero(d, d);
  for (const auto& [x, y] : u.terms()) m.noalias() += y * x.adjoint();
  return m;
}

double trace_norm(const TensorElement& u) {
  if (u.empty()) return 0.0;
  Eigen::JacobiSVD<Operator> svd(tensor_matrix(u));
  return svd.singularValues().sum();
}

Complex tensor_pairing(const Operator& t, const TensorElement& u) {
  Complex acc = 0.0;
  for (const auto& [x, y] : u.terms()) acc += pairing(t, x, y);
  return acc;
}

}  // namespace opschur

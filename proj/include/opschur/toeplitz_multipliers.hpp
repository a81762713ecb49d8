#pragma once

#include <functional>
#include <vector>

#include "opschur/block_matrix.hpp"
#include "opschur/op_measures.hpp"
#include "opschur/torus_analysis.hpp"

namespace opschur {

// A Toeplitz truncation prescription: the N x N matrix with entries
// T_kj = mu^(j-k).  Note the index order: j - k, so that at d = 1 a density
// f recovers the classical Toeplitz matrix (f^(k-j))_kj.
struct ToeplitzSpec {
  OpMeasure measure;
  int truncation;
};

OpMatrix build_toeplitz(const OpMeasure& mu, Eigen::Index n);
inline OpMatrix build_toeplitz(const ToeplitzSpec& spec) {
  return build_toeplitz(spec.measure, spec.truncation);
}

// Operator norms of the Toeplitz truncations for each N in the ladder.
// Requires a density measure; the values are nondecreasing and converge to
// vinf_norm(mu) from below.
std::vector<double> toeplitz_norm_ladder(const OpMeasure& mu, const std::vector<int>& ns);

// Scalar compression gamma_kj = <T_kj x0, y0>.
Eigen::MatrixXcd compress(const OpMatrix& a, const HVector& x0, const HVector& y0);

// Embedding of a scalar matrix through a rank-one probe: S_kj = b_kj z0 z0^H.
// For a unit probe the block norm equals the scalar norm.
OpMatrix embed_scalar(const Eigen::MatrixXcd& b, const HVector& z0);

// The multiplier-action functional: <<(toeplitz(mu,N) * B)(x), y>> computed
// through the measure side.  For a discrete mu the tensor field is evaluated
// at the atoms; otherwise the pairing is taken coefficient by coefficient
// (exact for the trig-polynomial representations used here).
Complex schur_action_rhs(const OpMeasure& mu, const OpMatrix& b, const HSeq& x, const HSeq& y);

// |mu|, an upper bound for both one-sided multiplier norms of the Toeplitz
// matrix of mu.  Throws for lazy measures (variation unavailable).
double multiplier_upper_bound(const OpMeasure& mu);

// Coefficient polynomial of t -> sum_k (sum_j nu^(j-k)(x_j) e^{ijt}) (x) y_k e^{-ikt}:
// the tensor at frequency l collects the pairs (nu^(l) x_j, y_k) with j-k = l.
TrigPoly<TensorElement> multiplier_action_poly(const OpMeasure& nu, const HSeq& x, const HSeq& y);

// The same object as an evaluable tensor field on the torus.
std::function<TensorElement(double)> build_tensor_field(const OpMeasure& nu, const HSeq& x,
                                                        const HSeq& y);

// Computable surrogate for membership of mu in the SOT measure class:
// sup over the r-ladder of the L1 norm of the Poisson mean of mu_x.
double msot_membership(const OpMeasure& mu, const HVector& x,
                       const std::vector<double>& r_ladder, const Grid& grid);
double msot_membership(const OpMeasure& mu, const HVector& x,
                       const std::vector<double>& r_ladder = {0.5, 0.9, 0.99, 0.999});

}  // namespace opschur

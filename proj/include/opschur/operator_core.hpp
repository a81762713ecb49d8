#pragma once

#include <utility>
#include <vector>

#include "opschur/types.hpp"

namespace opschur {

// Rank-one operator z -> <z,x> y.  Entrywise T(i,j) = conj(x_j) y_i, i.e. the
// matrix y x^H.
inline Operator rank_one(const HVector& x, const HVector& y) {
  if (x.size() != y.size()) throw std::invalid_argument("rank_one: dimension mismatch");
  return y * x.adjoint();
}

// Duality pairing of T against the elementary tensor x (x) y: <T(x), y>.
// Linear in x, conjugate-linear in y.
inline Complex pairing(const Operator& t, const HVector& x, const HVector& y) {
  if (t.cols() != x.size() || t.rows() != y.size())
    throw std::invalid_argument("pairing: dimension mismatch");
  return y.dot(t * x);
}

inline HVector apply(const Operator& t, const HVector& x) {
  if (t.cols() != x.size()) throw std::invalid_argument("apply: dimension mismatch");
  return t * x;
}

inline Operator compose(const Operator& t, const Operator& s) {
  if (t.cols() != s.rows()) throw std::invalid_argument("compose: dimension mismatch");
  return t * s;
}

inline Operator adjoint(const Operator& t) { return t.adjoint(); }

// Largest singular value.  Power iteration on the Gram operator with a
// deterministic all-ones start plus three seeded random restarts; the
// convergence test is on the change of the Rayleigh quotient (relative
// 1e-12, two consecutive passes, at most 1e5 iterations).  The returned
// value never exceeds the true norm.
double spectral_norm(const Eigen::MatrixXcd& a);

// Top right singular pair (sigma, v) with ||v|| = 1, same iteration as
// spectral_norm.  Used by the alternating weak-l2 maximization.
std::pair<double, HVector> top_right_singular(const Eigen::MatrixXcd& a);

// A finite sum of elementary tensors sum_i x_i (x) y_i in H (x) H.  Complex
// scalars act linearly through the first slot; the second slot is paired
// conjugate-linearly (see pairing), which matches the duality with B(H).
class TensorElement {
 public:
  TensorElement() = default;

  void add_term(HVector x, HVector y) {
    if (x.size() != y.size()) throw std::invalid_argument("TensorElement: dimension mismatch");
    if (!terms_.empty() && terms_.front().first.size() != x.size())
      throw std::invalid_argument("TensorElement: dimension mismatch across terms");
    terms_.emplace_back(std::move(x), std::move(y));
  }

  const std::vector<std::pair<HVector, HVector>>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  Eigen::Index dim() const { return terms_.empty() ? 0 : terms_.front().first.size(); }

  TensorElement& operator*=(Complex c) {
    for (auto& [x, y] : terms_) x *= c;
    return *this;
  }
  friend TensorElement operator*(Complex c, TensorElement u) { return u *= c; }

  TensorElement& operator+=(const TensorElement& other) {
    for (const auto& [x, y] : other.terms_) add_term(x, y);
    return *this;
  }

 private:
  std::vector<std::pair<HVector, HVector>> terms_;
};

// Matrix sum_i y_i x_i^H carrying the tensor element; its Schatten-1 norm is
// the projective norm below.
Operator tensor_matrix(const TensorElement& u);

// Projective norm of u in H (x)^ H via the trace-class identification:
// the sum of singular values of tensor_matrix(u).  Independent of the chosen
// elementary-tensor decomposition.
double trace_norm(const TensorElement& u);

// sum_i <T x_i, y_i> — the functional J T evaluated on u.
Complex tensor_pairing(const Operator& t, const TensorElement& u);

}  // namespace opschur

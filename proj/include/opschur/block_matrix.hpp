#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "opschur/operator_core.hpp"
#include "opschur/types.hpp"

namespace opschur {

// An N x M grid of d x d operator blocks, a truncation of a matrix acting
// l2(H) -> l2(H).  Block indices are 0-based (row k, column j); diagonal
// offsets l refer to entries (k, k+l) and are base-independent.
class OpMatrix {
 public:
  OpMatrix() = default;
  OpMatrix(Eigen::Index rows, Eigen::Index cols, Eigen::Index dim)
      : rows_(rows), cols_(cols), dim_(dim),
        blocks_(static_cast<std::size_t>(rows * cols), Operator::Zero(dim, dim)) {
    if (rows < 1 || cols < 1 || dim < 1)
      throw std::invalid_argument("OpMatrix: shape must be positive");
  }

  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  Eigen::Index dim() const { return dim_; }

  const Operator& block(Eigen::Index k, Eigen::Index j) const {
    check_index(k, j);
    return blocks_[static_cast<std::size_t>(k * cols_ + j)];
  }
  void set_block(Eigen::Index k, Eigen::Index j, Operator t) {
    check_index(k, j);
    if (t.rows() != dim_ || t.cols() != dim_)
      throw std::invalid_argument("OpMatrix: block dimension mismatch");
    blocks_[static_cast<std::size_t>(k * cols_ + j)] = std::move(t);
  }

  // Dense (N*d) x (M*d) matrix whose (k,j) block is block(k,j).
  Eigen::MatrixXcd flatten() const;

  // every block equal to the identity
  static OpMatrix constant_identity(Eigen::Index rows, Eigen::Index cols, Eigen::Index dim);
  // identity of B(l2(H)) at truncation: identity blocks on the diagonal
  static OpMatrix block_identity(Eigen::Index n, Eigen::Index dim);

 private:
  void check_index(Eigen::Index k, Eigen::Index j) const {
    if (k < 0 || k >= rows_ || j < 0 || j >= cols_)
      throw std::out_of_range("OpMatrix: block index out of range");
  }
  Eigen::Index rows_ = 0, cols_ = 0, dim_ = 0;
  std::vector<Operator> blocks_;
};

// A finite H-valued sequence, the truncation model of l2(H).
class HSeq {
 public:
  HSeq() = default;
  HSeq(Eigen::Index len, Eigen::Index dim)
      : dim_(dim), items_(static_cast<std::size_t>(len), HVector::Zero(dim)) {
    if (len < 1 || dim < 1) throw std::invalid_argument("HSeq: shape must be positive");
  }
  explicit HSeq(std::vector<HVector> items) : items_(std::move(items)) {
    if (items_.empty()) throw std::invalid_argument("HSeq: empty");
    dim_ = items_.front().size();
    for (const auto& v : items_)
      if (v.size() != dim_) throw std::invalid_argument("HSeq: dimension mismatch");
  }

  Eigen::Index len() const { return static_cast<Eigen::Index>(items_.size()); }
  Eigen::Index dim() const { return dim_; }
  const HVector& operator[](Eigen::Index j) const { return items_[static_cast<std::size_t>(j)]; }
  HVector& operator[](Eigen::Index j) { return items_[static_cast<std::size_t>(j)]; }

  Eigen::VectorXcd stacked() const;
  double norm() const { return stacked().norm(); }

 private:
  Eigen::Index dim_ = 0;
  std::vector<HVector> items_;
};

// <<x,y>> = sum_j <x_j, y_j>.
Complex seq_inner(const HSeq& x, const HSeq& y);

// Index masks S for the entrywise projections P_S.
class IndexMask {
 public:
  static IndexMask row(Eigen::Index k);
  static IndexMask col(Eigen::Index j);
  static IndexMask diagonal(Eigen::Index l);  // entries (k, k+l), l may be negative
  static IndexMask upper_triangle();          // j >= k
  static IndexMask lower_triangle();          // j <= k
  static IndexMask rectangle(Eigen::Index n, Eigen::Index m);  // k < n, j < m
  static IndexMask explicit_set(std::set<std::pair<Eigen::Index, Eigen::Index>> entries);

  bool contains(Eigen::Index k, Eigen::Index j) const;

 private:
  enum class Kind { Row, Col, Diagonal, Upper, Lower, Rectangle, Explicit };
  IndexMask(Kind kind, Eigen::Index a, Eigen::Index b) : kind_(kind), a_(a), b_(b) {}
  Kind kind_;
  Eigen::Index a_ = 0, b_ = 0;
  std::set<std::pair<Eigen::Index, Eigen::Index>> entries_;
};

// A(x) = (sum_j T_kj x_j)_k.
HSeq apply(const OpMatrix& a, const HSeq& x);

// Norm in B(l2(H)) at this truncation: spectral norm of flatten().
double opnorm(const OpMatrix& a);

// Schur product (T_kj S_kj): entrywise operator composition, not commutative.
OpMatrix schur_product(const OpMatrix& a, const OpMatrix& b);

// Adjoint matrix (T*_jk): transposed shape, adjointed blocks.
OpMatrix adjoint_matrix(const OpMatrix& a);

// Entries outside the mask zeroed.
OpMatrix project(const OpMatrix& a, const IndexMask& s);

// l2_SOT norm of a finite operator sequence: sup over unit x of
// (sum_n ||T_n x||^2)^{1/2}, computed exactly as the spectral norm of the
// vertically stacked matrix [T_1; T_2; ...].
double sot_norm_seq(const std::vector<Operator>& t);

// Double-sum analogue over all blocks of a matrix.
double sot_norm_matrix(const OpMatrix& a);

// Certified lower bound of the weak-l2 norm
// sup_{||x||=||y||=1} (sum_n |<T_n x, y>|^2)^{1/2} by alternating singular
// vector maximization with basis-vector and seeded random restarts.
double weak_l2_norm(const std::vector<Operator>& t, int restarts = 8,
                    std::uint64_t seed = 0xC0FFEE);

enum class Side { left, right };

// Sampled lower bound of the truncation Schur-multiplier norm
// sup_B ||B*A||/||B|| (right) or ||A*B||/||B|| (left).  Samples: seeded
// random block matrices, every single-entry rank-one basis pattern, constant
// rank-one patterns, and scalar matrices embedded through rank-one probes.
// Deterministic for fixed seed and budget.
double multiplier_norm_lb(const OpMatrix& a, Side side, int budget,
                          std::uint64_t seed = 0xC0FFEE);

}  // namespace opschur

#include "opschur/block_matrix.hpp"

#include <algorithm>

#include "opschur/rng.hpp"

namespace opschur {

Eigen::MatrixXcd OpMatrix::flatten() const {
  Eigen::MatrixXcd m(rows_ * dim_, cols_ * dim_);
  for (Eigen::Index k = 0; k < rows_; ++k)
    for (Eigen::Index j = 0; j < cols_; ++j)
      m.block(k * dim_, j * dim_, dim_, dim_) = block(k, j);
  return m;
}

OpMatrix OpMatrix::constant_identity(Eigen::Index rows, Eigen::Index cols, Eigen::Index dim) {
  OpMatrix a(rows, cols, dim);
  for (Eigen::Index k = 0; k < rows; ++k)
    for (Eigen::Index j = 0; j < cols; ++j) a.set_block(k, j, Operator::Identity(dim, dim));
  return a;
}

OpMatrix OpMatrix::block_identity(Eigen::Index n, Eigen::Index dim) {
  OpMatrix a(n, n, dim);
  for (Eigen::Index k = 0; k < n; ++k) a.set_block(k, k, Operator::Identity(dim, dim));
  return a;
}

Eigen::VectorXcd HSeq::stacked() const {
  Eigen::VectorXcd v(len() * dim_);
  for (Eigen::Index j = 0; j < len(); ++j) v.segment(j * dim_, dim_) = items_[j];
  return v;
}

Complex seq_inner(const HSeq& x, const HSeq& y) {
  if (x.len() != y.len() || x.dim() != y.dim())
    throw std::invalid_argument("seq_inner: shape mismatch");
  Complex acc = 0.0;
  for (Eigen::Index j = 0; j < x.len(); ++j) acc += inner(x[j], y[j]);
  return acc;
}

IndexMask IndexMask::row(Eigen::Index k) { return {Kind::Row, k, 0}; }
IndexMask IndexMask::col(Eigen::Index j) { return {Kind::Col, j, 0}; }
IndexMask IndexMask::diagonal(Eigen::Index l) { return {Kind::Diagonal, l, 0}; }
IndexMask IndexMask::upper_triangle() { return {Kind::Upper, 0, 0}; }
IndexMask IndexMask::lower_triangle() { return {Kind::Lower, 0, 0}; }
IndexMask IndexMask::rectangle(Eigen::Index n, Eigen::Index m) { return {Kind::Rectangle, n, m}; }
IndexMask IndexMask::explicit_set(std::set<std::pair<Eigen::Index, Eigen::Index>> entries) {
  IndexMask mask(Kind::Explicit, 0, 0);
  mask.entries_ = std::move(entries);
  return mask;
}

bool IndexMask::contains(Eigen::Index k, Eigen::Index j) const {
  switch (kind_) {
    case Kind::Row: return k == a_;
    case Kind::Col: return j == a_;
    case Kind::Diagonal: return j - k == a_;
    case Kind::Upper: return j >= k;
    case Kind::Lower: return j <= k;
    case Kind::Rectangle: return k < a_ && j < b_;
    case Kind::Explicit: return entries_.count({k, j}) > 0;
  }
  return false;
}

HSeq apply(const OpMatrix& a, const HSeq& x) {
  if (x.len() != a.cols() || x.dim() != a.dim())
    throw std::invalid_argument("apply: shape mismatch");
  HSeq y(a.rows(), a.dim());
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    HVector acc = HVector::Zero(a.dim());
    for (Eigen::Index j = 0; j < a.cols(); ++j) acc.noalias() += a.block(k, j) * x[j];
    y[k] = std::move(acc);
  }
  return y;
}

double opnorm(const OpMatrix& a) { return spectral_norm(a.flatten()); }

OpMatrix schur_product(const OpMatrix& a, const OpMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.dim() != b.dim())
    throw std::invalid_argument("schur_product: shape mismatch");
  OpMatrix c(a.rows(), a.cols(), a.dim());
  for (Eigen::Index k = 0; k < a.rows(); ++k)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      c.set_block(k, j, a.block(k, j) * b.block(k, j));
  return c;
}

OpMatrix adjoint_matrix(const OpMatrix& a) {
  OpMatrix s(a.cols(), a.rows(), a.dim());
  for (Eigen::Index k = 0; k < a.rows(); ++k)
    for (Eigen::Index j = 0; j < a.cols(); ++j) s.set_block(j, k, a.block(k, j).adjoint());
  return s;
}

OpMatrix project(const OpMatrix& a, const IndexMask& s) {
  OpMatrix p(a.rows(), a.cols(), a.dim());
  for (Eigen::Index k = 0; k < a.rows(); ++k)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (s.contains(k, j)) p.set_block(k, j, a.block(k, j));
  return p;
}

namespace {

Eigen::MatrixXcd vstack(const std::vector<Operator>& t) {
  const Eigen::Index d = t.front().cols();
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(t.size()) * t.front().rows(), d);
  Eigen::Index row = 0;
  for (const auto& op : t) {
    if (op.cols() != d) throw std::invalid_argument("sot norm: dimension mismatch");
    m.middleRows(row, op.rows()) = op;
    row += op.rows();
  }
  return m;
}

}  // namespace

double sot_norm_seq(const std::vector<Operator>& t) {
  if (t.empty()) throw std::invalid_argument("sot_norm_seq: empty sequence");
  return spectral_norm(vstack(t));
}

double sot_norm_matrix(const OpMatrix& a) {
  std::vector<Operator> all;
  all.reserve(static_cast<std::size_t>(a.rows() * a.cols()));
  for (Eigen::Index k = 0; k < a.rows(); ++k)
    for (Eigen::Index j = 0; j < a.cols(); ++j) all.push_back(a.block(k, j));
  return sot_norm_seq(all);
}

double weak_l2_norm(const std::vector<Operator>& t, int restarts, std::uint64_t seed) {
  if (t.empty()) throw std::invalid_argument("weak_l2_norm: empty sequence");
  const Eigen::Index d = t.front().cols();
  const Eigen::Index n = static_cast<Eigen::Index>(t.size());

  // rows(y): n x d matrix whose n-th row is y^H T_n, so that
  // sum_n |<T_n x, y>|^2 = ||rows(y) x||^2.
  auto rows_for_y = [&](const HVector& y) {
    Eigen::MatrixXcd r(n, d);
    for (Eigen::Index i = 0; i < n; ++i) r.row(i) = y.adjoint() * t[static_cast<std::size_t>(i)];
    return r;
  };
  // cols(x): n x d matrix whose n-th row is (T_n x)^H, so the same sum equals
  // ||cols(x) y||^2.
  auto rows_for_x = [&](const HVector& x) {
    Eigen::MatrixXcd r(n, d);
    for (Eigen::Index i = 0; i < n; ++i)
      r.row(i) = (t[static_cast<std::size_t>(i)] * x).adjoint();
    return r;
  };

  double best = 0.0;
  const int total_starts = static_cast<int>(d) + std::max(restarts, 0);
  for (int s = 0; s < total_starts; ++s) {
    HVector y;
    if (s < d) {
      y = HVector::Unit(d, s);
    } else {
      Rng rng(substream(seed, static_cast<std::uint64_t>(s)));
      y = random_unit_hvector(rng, d);
    }
    double value = 0.0;
    for (int it = 0; it < 50; ++it) {
      auto [sx, x] = top_right_singular(rows_for_y(y));
      auto [sy, ynew] = top_right_singular(rows_for_x(x));
      y = ynew;
      if (sy <= value * (1.0 + 1e-13)) {
        value = std::max(value, sy);
        break;
      }
      value = sy;
    }
    best = std::max(best, value);
  }
  return best;
}

namespace {

OpMatrix random_block_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols, Eigen::Index dim) {
  OpMatrix b(rows, cols, dim);
  for (Eigen::Index k = 0; k < rows; ++k)
    for (Eigen::Index j = 0; j < cols; ++j) b.set_block(k, j, random_operator(rng, dim));
  return b;
}

OpMatrix embed_scalar_probe(const Eigen::MatrixXcd& beta, const HVector& z) {
  OpMatrix b(beta.rows(), beta.cols(), z.size());
  const Operator zz = rank_one(z, z);
  for (Eigen::Index k = 0; k < beta.rows(); ++k)
    for (Eigen::Index j = 0; j < beta.cols(); ++j) b.set_block(k, j, beta(k, j) * zz);
  return b;
}

}  // namespace

double multiplier_norm_lb(const OpMatrix& a, Side side, int budget, std::uint64_t seed) {
  const Eigen::Index rows = a.rows(), cols = a.cols(), d = a.dim();

  double best = 0.0;
  auto consider = [&](const OpMatrix& b) {
    const double nb = opnorm(b);
    if (nb <= 0.0) return;
    const OpMatrix prod = (side == Side::right) ? schur_product(b, a) : schur_product(a, b);
    const double ratio = opnorm(prod) / nb;
    if (ratio > best) best = ratio;
  };

  // Single-entry rank-one basis patterns: one nonzero block e_b e_a^H at (k,j).
  for (Eigen::Index k = 0; k < rows; ++k)
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index ia = 0; ia < d; ++ia)
        for (Eigen::Index ib = 0; ib < d; ++ib) {
          OpMatrix b(rows, cols, d);
          b.set_block(k, j, rank_one(HVector::Unit(d, ia), HVector::Unit(d, ib)));
          consider(b);
        }

  // Constant rank-one patterns: every block equal to e_b e_a^H.
  for (Eigen::Index ia = 0; ia < d; ++ia)
    for (Eigen::Index ib = 0; ib < d; ++ib) {
      OpMatrix b(rows, cols, d);
      const Operator r = rank_one(HVector::Unit(d, ia), HVector::Unit(d, ib));
      for (Eigen::Index k = 0; k < rows; ++k)
        for (Eigen::Index j = 0; j < cols; ++j) b.set_block(k, j, r);
      consider(b);
    }

  // Seeded random block matrices.
  for (int s = 0; s < budget; ++s) {
    Rng rng(substream(seed, static_cast<std::uint64_t>(s)));
    consider(random_block_matrix(rng, rows, cols, d));
  }

  // Embedded random scalar matrices through rank-one probes z z^H.
  for (int s = 0; s < budget; ++s) {
    Rng rng(substream(seed ^ 0x5ca1ab1eull, static_cast<std::uint64_t>(s)));
    Eigen::MatrixXcd beta(rows, cols);
    for (Eigen::Index k = 0; k < rows; ++k)
      for (Eigen::Index j = 0; j < cols; ++j) beta(k, j) = rng.cnormal();
    consider(embed_scalar_probe(beta, random_unit_hvector(rng, d)));
  }

  return best;
}

}  // namespace opschur

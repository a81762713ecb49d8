#include "opschur/torus_analysis.hpp"

#include <cmath>

namespace opschur {

TrigPoly<HVector> h_poly(const HSeq& x) {
  TrigPoly<HVector> p;
  for (Eigen::Index j = 0; j < x.len(); ++j) p.set_coeff(static_cast<int>(j) + 1, x[j]);
  return p;
}

TrigPoly2 block_symbol(const OpMatrix& a) {
  TrigPoly2 p;
  for (Eigen::Index k = 0; k < a.rows(); ++k)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      p.set_coeff(-static_cast<int>(j + 1), static_cast<int>(k + 1), a.block(k, j));
  return p;
}

double l2_norm(const TrigPoly<HVector>& p, const Grid& grid) {
  double acc = 0.0;
  for (int g = 0; g < grid.size; ++g) acc += p.eval(grid.node(g)).squaredNorm();
  return std::sqrt(acc * grid.weight());
}

std::vector<double> tilde_h2_seq(const std::vector<Operator>& t, const Grid& grid) {
  if (t.empty()) throw std::invalid_argument("tilde_h2_seq: empty sequence");
  const int len = static_cast<int>(t.size());
  if (grid.size < 8 * len) throw std::invalid_argument("tilde_h2_seq: grid too small");
  const Eigen::Index d = t.front().rows();
  std::vector<double> acc(static_cast<std::size_t>(len), 0.0);
  for (int g = 0; g < grid.size; ++g) {
    const double tg = grid.node(g);
    Operator partial = Operator::Zero(d, t.front().cols());
    for (int n = 0; n < len; ++n) {
      partial += unit_phase((n + 1) * tg) * t[static_cast<std::size_t>(n)];
      const double s = spectral_norm(partial);
      acc[static_cast<std::size_t>(n)] += s * s;
    }
  }
  std::vector<double> out(acc.size());
  for (std::size_t n = 0; n < acc.size(); ++n) out[n] = std::sqrt(acc[n] * grid.weight());
  return out;
}

double tilde_h2_matrix(const OpMatrix& a, const Grid& grid) {
  const int need = 8 * static_cast<int>(std::max(a.rows(), a.cols()));
  if (grid.size < need) throw std::invalid_argument("tilde_h2_matrix: grid too small");
  const Eigen::Index d = a.dim();

  // Row symbols B_k(s) = sum_j T_kj e^{-i(j+1)s}, cached per s node.
  std::vector<std::vector<Operator>> row_sym(static_cast<std::size_t>(grid.size));
  for (int gs = 0; gs < grid.size; ++gs) {
    const double s = grid.node(gs);
    auto& per_row = row_sym[static_cast<std::size_t>(gs)];
    per_row.assign(static_cast<std::size_t>(a.rows()), Operator::Zero(d, d));
    for (Eigen::Index k = 0; k < a.rows(); ++k)
      for (Eigen::Index j = 0; j < a.cols(); ++j)
        per_row[static_cast<std::size_t>(k)] += unit_phase(-(static_cast<int>(j) + 1) * s) * a.block(k, j);
  }

  double acc = 0.0;
  for (int gs = 0; gs < grid.size; ++gs) {
    const auto& per_row = row_sym[static_cast<std::size_t>(gs)];
    for (int gt = 0; gt < grid.size; ++gt) {
      const double t = grid.node(gt);
      Operator sym = Operator::Zero(d, d);
      for (Eigen::Index k = 0; k < a.rows(); ++k)
        sym += unit_phase((static_cast<int>(k) + 1) * t) * per_row[static_cast<std::size_t>(k)];
      const double s = spectral_norm(sym);
      acc += s * s;
    }
  }
  return std::sqrt(acc * grid.weight() * grid.weight());
}

Complex bilinear_form(const OpMatrix& a, const HSeq& x, const HSeq& y) {
  if (x.len() != a.cols() || y.len() != a.rows() || x.dim() != a.dim() || y.dim() != a.dim())
    throw std::invalid_argument("bilinear_form: shape mismatch");
  const Eigen::Index n = a.rows(), m = a.cols(), d = a.dim();
  // Exact widths: the s-integrand has frequencies in [-(m-1), m-1], the
  // t-integrand in [-(n-1), n-1].
  const Grid gs = Grid::exact_for_width(2 * static_cast<int>(m) + 1);
  const Grid gt = Grid::exact_for_width(2 * static_cast<int>(n) + 1);

  const TrigPoly<HVector> hx = h_poly(x);
  const TrigPoly<HVector> hy = h_poly(y);

  Complex acc = 0.0;
  for (int is = 0; is < gs.size; ++is) {
    const double s = gs.node(is);
    const HVector hxs = hx.eval(s);
    // w_k(s) = (sum_j T_kj e^{-i(j+1)s}) h_x(s)
    std::vector<HVector> w(static_cast<std::size_t>(n), HVector::Zero(d));
    for (Eigen::Index k = 0; k < n; ++k) {
      Operator row = Operator::Zero(d, d);
      for (Eigen::Index j = 0; j < m; ++j)
        row += unit_phase(-(static_cast<int>(j) + 1) * s) * a.block(k, j);
      w[static_cast<std::size_t>(k)] = row * hxs;
    }
    for (int it = 0; it < gt.size; ++it) {
      const double t = gt.node(it);
      HVector sym_x = HVector::Zero(d);
      for (Eigen::Index k = 0; k < n; ++k)
        sym_x += unit_phase((static_cast<int>(k) + 1) * t) * w[static_cast<std::size_t>(k)];
      acc += inner(sym_x, hy.eval(t));
    }
  }
  return acc * (gs.weight() * gt.weight());
}

double l1_tensor_norm(const std::function<TensorElement(double)>& f, const Grid& grid) {
  double acc = 0.0;
  for (int g = 0; g < grid.size; ++g) acc += trace_norm(f(grid.node(g)));
  return acc * grid.weight();
}

double l1_tensor_norm(const TrigPoly<TensorElement>& f, const Grid& grid) {
  return l1_tensor_norm([&f](double t) { return f.eval(t); }, grid);
}

}  // namespace opschur

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "opschur/block_matrix.hpp"
#include "opschur/operator_core.hpp"
#include "opschur/types.hpp"

namespace opschur {

// Uniform grid on the torus: nodes 2*pi*g/size with quadrature weight 1/size.
// Integrates exactly every trigonometric polynomial whose coefficient support
// fits in a window of length <= size.
struct Grid {
  explicit Grid(int size_) : size(size_) {
    if (size < 1) throw std::invalid_argument("Grid: size must be positive");
  }
  int size;
  double node(int g) const { return two_pi * g / size; }
  double weight() const { return 1.0 / size; }

  static Grid exact_for_width(int width) { return Grid(std::max(width, 1)); }
  static Grid oversampled(int width, int factor = 8) {
    return Grid(std::max(factor * std::max(width, 1), 1));
  }
};

// Finitely supported map Z -> V of Fourier coefficients; evaluation at t is
// sum_k coeffs[k] e^{ikt}.  V is one of Complex, HVector, Operator,
// TensorElement (anything with V+V and Complex*V).
template <typename V>
class TrigPoly {
 public:
  using CoeffMap = std::map<int, V>;

  TrigPoly() = default;

  void set_coeff(int k, V v) { coeffs_[k] = std::move(v); }
  void add_coeff(int k, const V& v) {
    auto it = coeffs_.find(k);
    if (it == coeffs_.end())
      coeffs_.emplace(k, v);
    else
      it->second += v;
  }
  const CoeffMap& coeffs() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }

  int min_degree() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
  int max_degree() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }
  int width() const { return coeffs_.empty() ? 0 : max_degree() - min_degree() + 1; }

  V eval(double t) const {
    std::optional<V> acc;
    for (const auto& [k, v] : coeffs_) {
      V term = unit_phase(k * t) * v;
      if (acc)
        *acc += term;
      else
        acc = std::move(term);
    }
    if (!acc) return V{};
    return *acc;
  }

 private:
  CoeffMap coeffs_;
};

// Bivariate operator-valued polynomial sum T_{ks,kt} e^{i ks s} e^{i kt t}.
class TrigPoly2 {
 public:
  using Key = std::pair<int, int>;

  void set_coeff(int ks, int kt, Operator v) { coeffs_[{ks, kt}] = std::move(v); }
  const std::map<Key, Operator>& coeffs() const { return coeffs_; }

  Operator eval(double s, double t) const {
    if (coeffs_.empty()) return Operator();
    Operator acc = Operator::Zero(coeffs_.begin()->second.rows(), coeffs_.begin()->second.cols());
    for (const auto& [key, v] : coeffs_) acc += (unit_phase(key.first * s) * unit_phase(key.second * t)) * v;
    return acc;
  }

 private:
  std::map<Key, Operator> coeffs_;
};

// h_x(t) = sum_j x_j e^{ijt} with j = 1..len (analytic frequencies).
TrigPoly<HVector> h_poly(const HSeq& x);

// Symbol of a block matrix: coefficient at (-(j+1), k+1) carries block (k,j),
// i.e. evaluation sum_kj T_kj e^{-ijs} e^{ikt} in 1-based paper indices.
TrigPoly2 block_symbol(const OpMatrix& a);

// L2(T,H) norm of an H-valued polynomial by grid quadrature.
double l2_norm(const TrigPoly<HVector>& p, const Grid& grid);

// Partial truncated-Hardy norms for N = 1..len:
// (integral of ||sum_{n<=N} T_n e^{int}||^2 dt/2pi)^{1/2}.  The integrand is
// an operator norm, not a polynomial, so the grid must oversample:
// grid.size >= 8*len is required.
std::vector<double> tilde_h2_seq(const std::vector<Operator>& t, const Grid& grid);

// Bivariate analogue over the full block support; grid used for both axes,
// grid.size >= 8*max(rows, cols) required.
double tilde_h2_matrix(const OpMatrix& a, const Grid& grid);

// B_A(h_x, h_y) = integral of <A_sym(s,t) h_x(s), h_y(t)> over T x T, on
// exact grids (the integrand is a trig polynomial).  Equals <<A(x), y>>.
Complex bilinear_form(const OpMatrix& a, const HSeq& x, const HSeq& y);

// Quadrature of t -> trace_norm(F(t)).
double l1_tensor_norm(const std::function<TensorElement(double)>& f, const Grid& grid);
double l1_tensor_norm(const TrigPoly<TensorElement>& f, const Grid& grid);

}  // namespace opschur

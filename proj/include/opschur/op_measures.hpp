#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "opschur/operator_core.hpp"
#include "opschur/torus_analysis.hpp"
#include "opschur/types.hpp"

namespace opschur {

namespace detail {
template <typename V>
V zero_value(Eigen::Index dim);
template <>
inline Operator zero_value<Operator>(Eigen::Index dim) { return Operator::Zero(dim, dim); }
template <>
inline HVector zero_value<HVector>(Eigen::Index dim) { return HVector::Zero(dim); }

inline double value_norm(const Operator& w) { return spectral_norm(w); }
inline double value_norm(const HVector& w) { return w.norm(); }

inline bool value_dim_ok(const Operator& w, Eigen::Index dim) {
  return w.rows() == dim && w.cols() == dim;
}
inline bool value_dim_ok(const HVector& w, Eigen::Index dim) { return w.size() == dim; }
}  // namespace detail

// A measure on the torus with values in B(H) (V = Operator) or H
// (V = HVector), in one of three representations:
//   Discrete — finitely many atoms (t_i, W_i), distinct angles;
//   Density  — d mu = f dm for a trig-polynomial symbol f;
//   Lazy     — only the Fourier coefficients k -> mu^(k) on a finite band.
// Lazy measures support coefficient-level operations only (fourier,
// integration against polynomials, Poisson means, Toeplitz building);
// set-function quantities such as the variation are undefined for them.
template <typename V>
class Measure {
 public:
  struct Discrete {
    std::vector<double> angles;
    std::vector<V> weights;
  };
  struct Density {
    TrigPoly<V> symbol;
  };
  struct Lazy {
    std::function<V(int)> rule;
    int support_min = 0;
    int support_max = -1;
    std::string kind = "custom";  // registry tag for serialization
  };
  using Rep = std::variant<Discrete, Density, Lazy>;

  static Measure discrete(Eigen::Index dim, std::vector<double> angles, std::vector<V> weights) {
    if (angles.size() != weights.size())
      throw std::invalid_argument("Measure: atom angle/weight count mismatch");
    for (auto& t : angles) {
      t = std::fmod(t, two_pi);
      if (t < 0) t += two_pi;
    }
    for (std::size_t i = 0; i < angles.size(); ++i)
      for (std::size_t j = i + 1; j < angles.size(); ++j)
        if (angles[i] == angles[j]) throw std::invalid_argument("Measure: duplicate atom angles");
    for (const auto& w : weights)
      if (!detail::value_dim_ok(w, dim)) throw std::invalid_argument("Measure: weight dimension mismatch");
    return Measure(dim, Discrete{std::move(angles), std::move(weights)});
  }

  static Measure density(Eigen::Index dim, TrigPoly<V> symbol) {
    for (const auto& [k, c] : symbol.coeffs())
      if (!detail::value_dim_ok(c, dim)) throw std::invalid_argument("Measure: symbol dimension mismatch");
    return Measure(dim, Density{std::move(symbol)});
  }

  static Measure lazy(Eigen::Index dim, std::function<V(int)> rule, int support_min,
                      int support_max, std::string kind = "custom") {
    return Measure(dim, Lazy{std::move(rule), support_min, support_max, std::move(kind)});
  }

  Eigen::Index dim() const { return dim_; }
  const Rep& rep() const { return rep_; }
  bool is_discrete() const { return std::holds_alternative<Discrete>(rep_); }
  bool is_density() const { return std::holds_alternative<Density>(rep_); }
  bool is_lazy() const { return std::holds_alternative<Lazy>(rep_); }
  const Discrete& as_discrete() const { return std::get<Discrete>(rep_); }
  const Density& as_density() const { return std::get<Density>(rep_); }
  const Lazy& as_lazy() const { return std::get<Lazy>(rep_); }

 private:
  Measure(Eigen::Index dim, Rep rep) : dim_(dim), rep_(std::move(rep)) {
    if (dim < 1) throw std::invalid_argument("Measure: dimension must be positive");
  }
  Eigen::Index dim_;
  Rep rep_;
};

using OpMeasure = Measure<Operator>;
using HMeasure = Measure<HVector>;

// k-th Fourier coefficient mu^(k) = integral of e^{ikt} d mu (no conjugation;
// this is the measure convention).  A density d mu = f dm therefore has
// mu^(k) = f^(-k) in the function convention f^(k) = integral f conj(e^{ikt}).
template <typename V>
V fourier(const Measure<V>& mu, int k) {
  if (mu.is_discrete()) {
    const auto& rep = mu.as_discrete();
    V acc = detail::zero_value<V>(mu.dim());
    for (std::size_t i = 0; i < rep.angles.size(); ++i)
      acc += unit_phase(k * rep.angles[i]) * rep.weights[i];
    return acc;
  }
  if (mu.is_density()) {
    const auto& symbol = mu.as_density().symbol;
    auto it = symbol.coeffs().find(-k);
    if (it == symbol.coeffs().end()) return detail::zero_value<V>(mu.dim());
    return it->second;
  }
  const auto& rep = mu.as_lazy();
  if (k < rep.support_min || k > rep.support_max) return detail::zero_value<V>(mu.dim());
  return rep.rule(k);
}

// mu_x(A) = mu(A)(x): the H-valued measure obtained by applying each value.
HMeasure mu_x(const OpMeasure& mu, const HVector& x);

// Adjoint measure mu*(A) = mu(A)*; coefficient law
// fourier(mu*, k) = adjoint(fourier(mu, -k)).
OpMeasure adjoint_measure(const OpMeasure& mu);

// Total variation |mu|(T).  Discrete: sum of weight norms (the separating
// partition attains the sup).  Density: oversampled quadrature of ||f(t)||.
// Lazy: throws, use poisson_variation.
template <typename V>
double variation(const Measure<V>& mu);

// Lower bound of the semivariation sup over unimodular scalars of
// ||sum_i eps_i W_i||: seeded random phase patterns plus cyclic
// coordinate-ascent refinement; ties keep the first maximizer in seeded
// order.  Densities are atomized on an oversampled grid first.
template <typename V>
double semivariation_lb(const Measure<V>& mu, int budget = 64, std::uint64_t seed = 0xC0FFEE);

// V-infinity norm semantics by representation:
//   Density  — sup_t ||f(t)|| (grid maximum with local refinement);
//   Discrete — +infinity (an atomic measure admits no m-bound);
//   Lazy     — the lower bound sup_k ||mu^(k)||, since every coefficient is
//              dominated by the L1 -> B(H) norm.
template <typename V>
double vinf_norm(const Measure<V>& mu);

// Lower bound of ||mu||_SOT = sup over unit x of |mu_x|, by ascent of
// x -> variation(mu_x) over the sphere from basis and seeded random starts.
// Exact for a single atom.
double sot_norm_estimate(const OpMeasure& mu, int budget = 8, std::uint64_t seed = 0xC0FFEE);

// T_mu against a scalar polynomial: sum_k psi_k mu^(k).
Operator integrate_poly(const OpMeasure& mu, const TrigPoly<Complex>& psi);

// Psi_mu against a tensor-valued polynomial: sum_k J mu^(k)(G_k).
Complex psi_pair(const OpMeasure& mu, const TrigPoly<TensorElement>& g);

// Phi_mu against an H-valued polynomial: sum_k mu^(k)(g_k).
HVector phi_apply(const OpMeasure& mu, const TrigPoly<HVector>& g);

// Series cutoff K(r) for the Poisson mean with tail below 1e-12.
int poisson_cutoff(double r);

// P_r * mu(t) = sum_{|k| <= K} mu^(k) r^{|k|} e^{ikt}.  For discrete measures
// the truncated kernel is evaluated in closed form per atom.
template <typename V>
V poisson_mean(const Measure<V>& mu, double r, double t);

// L1 norm of the Poisson mean by grid quadrature; the default grid has
// 8 * K_effective nodes.
template <typename V>
double poisson_l1(const Measure<V>& mu, double r, const Grid& grid);
template <typename V>
double poisson_l1(const Measure<V>& mu, double r);

// sup over the r-ladder of poisson_l1; a lower approximation of |mu| that is
// defined for every representation.
template <typename V>
double poisson_variation(const Measure<V>& mu, const std::vector<double>& r_ladder = {0.5, 0.9, 0.99, 0.999});

// The coefficient-defined measure mu^(k) = e_k e_k^H for 1 <= k <= dim (and 0
// otherwise): bounded L1 -> B(H) with norm one yet with no integrable
// density, since its coefficients do not vanish at infinity.
OpMeasure spectral_lazy_measure(Eigen::Index dim);

}  // namespace opschur

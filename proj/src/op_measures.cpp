#include "opschur/op_measures.hpp"

#include <algorithm>
#include <limits>

#include "opschur/parallel.hpp"
#include "opschur/rng.hpp"

namespace opschur {

namespace {

constexpr double kPoissonTail = 1e-12;

// golden-section maximization on [lo, hi]; returns (argmax, value)
std::pair<double, double> golden_max(const std::function<double(double)>& f, double lo, double hi,
                                     int iters = 90) {
  const double phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters && b - a > 1e-15; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    }
  }
  return f1 >= f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

template <typename V>
std::pair<std::vector<double>, std::vector<V>> atomized(const Measure<V>& mu) {
  if (mu.is_discrete()) {
    const auto& rep = mu.as_discrete();
    return {rep.angles, rep.weights};
  }
  const auto& symbol = std::get<typename Measure<V>::Density>(mu.rep()).symbol;
  const Grid grid = Grid::oversampled(std::max(symbol.width(), 8));
  std::vector<double> angles(static_cast<std::size_t>(grid.size));
  std::vector<V> weights(static_cast<std::size_t>(grid.size));
  for (int g = 0; g < grid.size; ++g) {
    angles[static_cast<std::size_t>(g)] = grid.node(g);
    V v = symbol.eval(grid.node(g));
    if (v.size() == 0) v = detail::zero_value<V>(mu.dim());
    weights[static_cast<std::size_t>(g)] = grid.weight() * v;
  }
  return {std::move(angles), std::move(weights)};
}

}  // namespace

HMeasure mu_x(const OpMeasure& mu, const HVector& x) {
  if (x.size() != mu.dim()) throw std::invalid_argument("mu_x: dimension mismatch");
  if (mu.is_discrete()) {
    const auto& rep = mu.as_discrete();
    std::vector<HVector> weights;
    weights.reserve(rep.weights.size());
    for (const auto& w : rep.weights) weights.emplace_back(w * x);
    return HMeasure::discrete(mu.dim(), rep.angles, std::move(weights));
  }
  if (mu.is_density()) {
    TrigPoly<HVector> symbol;
    for (const auto& [l, c] : mu.as_density().symbol.coeffs()) symbol.set_coeff(l, c * x);
    return HMeasure::density(mu.dim(), std::move(symbol));
  }
  const auto& rep = mu.as_lazy();
  auto rule = rep.rule;
  HVector xc = x;
  return HMeasure::lazy(
      mu.dim(), [rule, xc](int k) -> HVector { return rule(k) * xc; }, rep.support_min,
      rep.support_max);
}

OpMeasure adjoint_measure(const OpMeasure& mu) {
  if (mu.is_discrete()) {
    const auto& rep = mu.as_discrete();
    std::vector<Operator> weights;
    weights.reserve(rep.weights.size());
    for (const auto& w : rep.weights) weights.emplace_back(w.adjoint());
    return OpMeasure::discrete(mu.dim(), rep.angles, std::move(weights));
  }
  if (mu.is_density()) {
    // pointwise adjoint of the symbol: coefficient l picks up (c_{-l})^*
    TrigPoly<Operator> symbol;
    for (const auto& [l, c] : mu.as_density().symbol.coeffs())
      symbol.set_coeff(-l, c.adjoint());
    return OpMeasure::density(mu.dim(), std::move(symbol));
  }
  const auto& rep = mu.as_lazy();
  auto rule = rep.rule;
  return OpMeasure::lazy(
      mu.dim(), [rule](int k) -> Operator { return rule(-k).adjoint(); }, -rep.support_max,
      -rep.support_min);
}

template <typename V>
double variation(const Measure<V>& mu) {
  if (mu.is_lazy())
    throw std::domain_error("variation: not computable from coefficients alone; use poisson_variation");
  if (mu.is_discrete()) {
    const auto& rep = mu.as_discrete();
    double acc = 0.0;
    for (const auto& w : rep.weights) acc += detail::value_norm(w);
    return acc;
  }
  const auto& symbol = std::get<typename Measure<V>::Density>(mu.rep()).symbol;
  if (symbol.empty()) return 0.0;
  const Grid grid = Grid::oversampled(std::max(symbol.width(), 8));
  double acc = 0.0;
  for (int g = 0; g < grid.size; ++g) acc += detail::value_norm(symbol.eval(grid.node(g)));
  return acc * grid.weight();
}

template <typename V>
double semivariation_lb(const Measure<V>& mu, int budget, std::uint64_t seed) {
  if (mu.is_lazy()) throw std::domain_error("semivariation_lb: lazy measures unsupported");
  const auto weights = atomized(mu).second;
  const std::size_t m = weights.size();
  if (m == 0) return 0.0;

  auto value = [&](const std::vector<Complex>& eps) {
    V acc = detail::zero_value<V>(mu.dim());
    for (std::size_t i = 0; i < m; ++i) acc += eps[i] * weights[i];
    return detail::value_norm(acc);
  };

  std::vector<Complex> best_eps(m, Complex(1.0));
  double best = value(best_eps);
  for (int s = 0; s < budget; ++s) {
    Rng rng(substream(seed, static_cast<std::uint64_t>(s)));
    std::vector<Complex> eps(m);
    for (auto& e : eps) e = rng.phase();
    const double v = value(eps);
    if (v > best) {
      best = v;
      best_eps = std::move(eps);
    }
  }

  // cyclic coordinate ascent over the phases; strict improvement only
  for (int pass = 0; pass < 16; ++pass) {
    bool improved = false;
    for (std::size_t i = 0; i < m; ++i) {
      V rest = detail::zero_value<V>(mu.dim());
      for (std::size_t j = 0; j < m; ++j)
        if (j != i) rest += best_eps[j] * weights[j];
      auto at_angle = [&](double th) {
        V acc = rest;
        acc += unit_phase(th) * weights[i];
        return detail::value_norm(acc);
      };
      double th_best = std::arg(best_eps[i]);
      double v_best = best;
      const int scan = 64;
      for (int q = 0; q < scan; ++q) {
        const double th = two_pi * q / scan;
        const double v = at_angle(th);
        if (v > v_best) {
          v_best = v;
          th_best = th;
        }
      }
      const double h = two_pi / scan;
      const auto [th_ref, v_ref] = golden_max(at_angle, th_best - h, th_best + h);
      if (v_ref > v_best) {
        v_best = v_ref;
        th_best = th_ref;
      }
      if (v_best > best) {
        best = v_best;
        best_eps[i] = unit_phase(th_best);
        improved = true;
      }
    }
    if (!improved) break;
  }
  return best;
}

template <typename V>
double vinf_norm(const Measure<V>& mu) {
  if (mu.is_discrete()) {
    const auto& rep = mu.as_discrete();
    bool all_zero = true;
    for (const auto& w : rep.weights)
      if (detail::value_norm(w) > 0.0) all_zero = false;
    if (rep.weights.empty() || all_zero) return 0.0;
    return std::numeric_limits<double>::infinity();
  }
  if (mu.is_lazy()) {
    const auto& rep = std::get<typename Measure<V>::Lazy>(mu.rep());
    double best = 0.0;
    for (int k = rep.support_min; k <= rep.support_max; ++k)
      best = std::max(best, detail::value_norm(rep.rule(k)));
    return best;
  }
  const auto& symbol = std::get<typename Measure<V>::Density>(mu.rep()).symbol;
  if (symbol.empty()) return 0.0;
  const Grid grid = Grid::oversampled(std::max(symbol.width(), 8));
  std::vector<double> at_node(static_cast<std::size_t>(grid.size));
  for (int g = 0; g < grid.size; ++g)
    at_node[static_cast<std::size_t>(g)] = detail::value_norm(symbol.eval(grid.node(g)));
  auto f = [&](double t) { return detail::value_norm(symbol.eval(t)); };
  const double h = two_pi / grid.size;
  double best = 0.0;
  for (int g = 0; g < grid.size; ++g) {
    const double prev = at_node[static_cast<std::size_t>((g + grid.size - 1) % grid.size)];
    const double next = at_node[static_cast<std::size_t>((g + 1) % grid.size)];
    const double here = at_node[static_cast<std::size_t>(g)];
    best = std::max(best, here);
    if (here >= prev && here >= next)  // refine each local grid maximum
      best = std::max(best, golden_max(f, grid.node(g) - h, grid.node(g) + h).second);
  }
  return best;
}

double sot_norm_estimate(const OpMeasure& mu, int budget, std::uint64_t seed) {
  if (mu.is_lazy()) throw std::domain_error("sot_norm_estimate: lazy measures unsupported");
  const auto weights = atomized(mu).second;
  const Eigen::Index d = mu.dim();
  const std::size_t m = weights.size();
  if (m == 0) return 0.0;

  auto value = [&](const HVector& x) {
    double acc = 0.0;
    for (const auto& w : weights) acc += (w * x).norm();
    return acc;
  };
  // ascent direction for x -> sum_i ||W_i x||: sum_i W_i^H (W_i x)/||W_i x||
  auto direction = [&](const HVector& x) {
    HVector g = HVector::Zero(d);
    for (const auto& w : weights) {
      HVector wx = w * x;
      const double n = wx.norm();
      if (n > 1e-300) g.noalias() += w.adjoint() * (wx / n);
    }
    return g;
  };

  double best = 0.0;
  const int total = static_cast<int>(d) + std::max(budget, 0);
  for (int s = 0; s < total; ++s) {
    HVector x;
    if (s < d) {
      x = HVector::Unit(d, s);
    } else {
      Rng rng(substream(seed, static_cast<std::uint64_t>(s)));
      x = random_unit_hvector(rng, d);
    }
    double v = value(x);
    for (int it = 0; it < 500; ++it) {
      HVector g = direction(x);
      const double gn = g.norm();
      if (gn <= 1e-300) break;
      x = g / gn;
      const double vn = value(x);  // monotone: the normalized subgradient step never decreases
      if (vn <= v * (1.0 + 1e-14)) {
        v = std::max(v, vn);
        break;
      }
      v = vn;
    }
    best = std::max(best, v);
  }
  return best;
}

Operator integrate_poly(const OpMeasure& mu, const TrigPoly<Complex>& psi) {
  Operator acc = Operator::Zero(mu.dim(), mu.dim());
  for (const auto& [k, c] : psi.coeffs()) acc += c * fourier(mu, k);
  return acc;
}

Complex psi_pair(const OpMeasure& mu, const TrigPoly<TensorElement>& g) {
  Complex acc = 0.0;
  for (const auto& [k, u] : g.coeffs()) acc += tensor_pairing(fourier(mu, k), u);
  return acc;
}

HVector phi_apply(const OpMeasure& mu, const TrigPoly<HVector>& g) {
  HVector acc = HVector::Zero(mu.dim());
  for (const auto& [k, x] : g.coeffs()) acc += fourier(mu, k) * x;
  return acc;
}

int poisson_cutoff(double r) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("poisson: r must lie in (0,1)");
  return static_cast<int>(std::ceil(std::log(kPoissonTail) / std::log(r)));
}

namespace {

// truncated Poisson kernel sum_{|k|<=K} r^{|k|} e^{ik theta}
double truncated_poisson(double theta, double r, int cutoff, double r_pow_cutoff) {
  const Complex z = r * unit_phase(theta);
  const Complex zk = r_pow_cutoff * unit_phase(cutoff * theta);
  return 1.0 + 2.0 * std::real(z * (1.0 - zk) / (1.0 - z));
}

template <typename V>
int effective_cutoff(const Measure<V>& mu, double r) {
  const int cutoff = poisson_cutoff(r);
  if (mu.is_discrete()) return cutoff;
  int band = 0;
  if (mu.is_density()) {
    const auto& symbol = std::get<typename Measure<V>::Density>(mu.rep()).symbol;
    if (symbol.empty()) return 1;
    band = std::max(std::abs(symbol.min_degree()), std::abs(symbol.max_degree()));
  } else {
    const auto& rep = std::get<typename Measure<V>::Lazy>(mu.rep());
    if (rep.support_min > rep.support_max) return 1;
    band = std::max(std::abs(rep.support_min), std::abs(rep.support_max));
  }
  return std::max(1, std::min(cutoff, band));
}

}  // namespace

template <typename V>
V poisson_mean(const Measure<V>& mu, double r, double t) {
  const int cutoff = poisson_cutoff(r);
  if (mu.is_discrete()) {
    const auto& rep = mu.as_discrete();
    const double rk = std::pow(r, cutoff);
    V acc = detail::zero_value<V>(mu.dim());
    for (std::size_t i = 0; i < rep.weights.size(); ++i)
      acc += truncated_poisson(t - rep.angles[i], r, cutoff, rk) * rep.weights[i];
    return acc;
  }
  if (mu.is_density()) {
    const auto& symbol = std::get<typename Measure<V>::Density>(mu.rep()).symbol;
    V acc = detail::zero_value<V>(mu.dim());
    for (const auto& [l, c] : symbol.coeffs()) {
      const int k = -l;  // mu^(k) = f^(-k)
      if (std::abs(k) > cutoff) continue;
      acc += (std::pow(r, std::abs(k)) * unit_phase(k * t)) * c;
    }
    return acc;
  }
  const auto& rep = std::get<typename Measure<V>::Lazy>(mu.rep());
  V acc = detail::zero_value<V>(mu.dim());
  for (int k = std::max(rep.support_min, -cutoff); k <= std::min(rep.support_max, cutoff); ++k)
    acc += (std::pow(r, std::abs(k)) * unit_phase(k * t)) * rep.rule(k);
  return acc;
}

template <typename V>
double poisson_l1(const Measure<V>& mu, double r, const Grid& grid) {
  const double sum = chunked_sum(static_cast<std::size_t>(grid.size), [&](std::size_t g) {
    return detail::value_norm(poisson_mean(mu, r, grid.node(static_cast<int>(g))));
  });
  return sum * grid.weight();
}

template <typename V>
double poisson_l1(const Measure<V>& mu, double r) {
  const Grid grid(std::max(8 * effective_cutoff(mu, r), 64));
  return poisson_l1(mu, r, grid);
}

template <typename V>
double poisson_variation(const Measure<V>& mu, const std::vector<double>& r_ladder) {
  double best = 0.0;
  for (double r : r_ladder) best = std::max(best, poisson_l1(mu, r));
  return best;
}

OpMeasure spectral_lazy_measure(Eigen::Index dim) {
  return OpMeasure::lazy(
      dim,
      [dim](int k) -> Operator {
        Operator w = Operator::Zero(dim, dim);
        if (k >= 1 && k <= dim) w(k - 1, k - 1) = 1.0;
        return w;
      },
      1, static_cast<int>(dim), "spectral");
}

// instantiations for the two value types
template double variation<Operator>(const OpMeasure&);
template double variation<HVector>(const HMeasure&);
template double semivariation_lb<Operator>(const OpMeasure&, int, std::uint64_t);
template double semivariation_lb<HVector>(const HMeasure&, int, std::uint64_t);
template double vinf_norm<Operator>(const OpMeasure&);
template double vinf_norm<HVector>(const HMeasure&);
template Operator poisson_mean<Operator>(const OpMeasure&, double, double);
template HVector poisson_mean<HVector>(const HMeasure&, double, double);
template double poisson_l1<Operator>(const OpMeasure&, double, const Grid&);
template double poisson_l1<HVector>(const HMeasure&, double, const Grid&);
template double poisson_l1<Operator>(const OpMeasure&, double);
template double poisson_l1<HVector>(const HMeasure&, double);
template double poisson_variation<Operator>(const OpMeasure&, const std::vector<double>&);
template double poisson_variation<HVector>(const HMeasure&, const std::vector<double>&);

}  // namespace opschur

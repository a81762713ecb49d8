#include "opschur/gallery.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "opschur/op_measures.hpp"
#include "opschur/rng.hpp"
#include "opschur/toeplitz_multipliers.hpp"
#include "opschur/torus_analysis.hpp"

namespace opschur {

namespace {

int pick(int requested, int fallback) { return requested > 0 ? requested : fallback; }

std::vector<Operator> diag_rank_one_family(int d, int n) {
  std::vector<Operator> t;
  for (int j = 0; j < n; ++j)
    t.push_back(rank_one(HVector::Unit(d, j), HVector::Unit(d, j)));
  return t;
}

std::vector<Operator> row_rank_one_family(int d, int n, const HVector& x) {
  std::vector<Operator> t;
  for (int j = 0; j < n; ++j) t.push_back(rank_one(HVector::Unit(d, j), x));
  return t;
}

// multiplication by e^{ijs}/j on the Fourier-mode truncation of L2(T) to
// modes -d..d: a shift by j scaled by 1/j, modes beyond d dropped
Operator harmonic_shift(int d, int j) {
  const int dim = 2 * d + 1;
  Operator t = Operator::Zero(dim, dim);
  for (int m = -d; m + j <= d; ++m) t(m + j + d, m + d) = 1.0 / j;
  return t;
}

GalleryReport diag_rank_one(const GalleryParams& p) {
  const int d = pick(p.d, 8);
  const int n = pick(p.n, std::min(d, 6));
  if (n > d) throw std::invalid_argument("diag_rank_one: needs N <= d");
  GalleryReport rep{"diag_rank_one", p, {}};
  const auto family = diag_rank_one_family(d, n);
  for (int j = 0; j < n; ++j)
    rep.metrics.push_back({"block_norm_" + std::to_string(j + 1), spectral_norm(family[j]),
                           1.0, 1e-9, "exact"});
  const auto partials = tilde_h2_seq(family, Grid::oversampled(n));
  for (int j = 0; j < n; ++j)
    rep.metrics.push_back({"tilde_h2_partial_" + std::to_string(j + 1), partials[j], 1.0,
                           1e-9, "exact"});
  return rep;
}

GalleryReport row_rank_one(const GalleryParams& p) {
  const int d = pick(p.d, 6);
  const int n = pick(p.n, std::min(d, 5));
  if (n > d) throw std::invalid_argument("row_rank_one: needs N <= d");
  Rng rng(p.seed);
  const HVector x = random_hvector(rng, d);
  GalleryReport rep{"row_rank_one", p, {}};
  const auto family = row_rank_one_family(d, n, x);
  rep.metrics.push_back({"sot_norm", sot_norm_seq(family), x.norm(), 1e-9, "exact"});
  const auto partials = tilde_h2_seq(family, Grid::oversampled(n));
  for (int j = 0; j < n; ++j)
    rep.metrics.push_back({"tilde_h2_partial_" + std::to_string(j + 1), partials[j],
                           x.norm() * std::sqrt(j + 1.0), 1e-9, "exact"});
  return rep;
}

GalleryReport harmonic_multiplication(const GalleryParams& p) {
  const int d = pick(p.d, 256);
  const int n = pick(p.n, 8);
  GalleryReport rep{"harmonic_multiplication", p, {}};
  std::vector<Operator> family;
  for (int j = 1; j <= n; ++j) family.push_back(harmonic_shift(d, j));
  for (int j = 1; j <= n; ++j)
    rep.metrics.push_back({"block_norm_" + std::to_string(j), spectral_norm(family[j - 1]),
                           1.0 / j, 1e-9, "exact"});
  double target = 0.0;
  for (int j = 1; j <= n; ++j) target += 1.0 / j;
  // sup_t || sum_j e^{ijt} T_j ||; conjugation by the diagonal phases
  // diag(e^{imt}) makes the norm independent of t, so one node suffices
  const int tgrid = pick(p.grid, 1);
  double sup = 0.0;
  for (int g = 0; g < tgrid; ++g) {
    const double t = two_pi * g / tgrid;
    Operator sum = Operator::Zero(2 * d + 1, 2 * d + 1);
    for (int j = 1; j <= n; ++j) sum += unit_phase(j * t) * family[j - 1];
    sup = std::max(sup, spectral_norm(sum));
  }
  rep.metrics.push_back({"partial_sum_sup", sup, target, 0.02 * target, "formula"});
  return rep;
}

GalleryReport mu1_mu2(const GalleryParams& p) {
  const int d = pick(p.d, 4);
  const int m = pick(p.m, 3);
  Rng rng(p.seed);
  std::vector<double> angles;
  std::vector<HVector> atoms;
  for (int i = 0; i < m; ++i) {
    angles.push_back(two_pi * (i + 0.13) / m);
    atoms.push_back(random_hvector(rng, d));
  }
  const HVector y0 = random_unit_hvector(rng, d);
  const HMeasure nu = HMeasure::discrete(d, angles, atoms);

  // mu1(A)x = <x, nu(A)> y0       (atoms v~ (x) y0)
  // mu2(A)x = <x, y0> nu(A)       (atoms y0~ (x) v)
  std::vector<Operator> w1, w2;
  for (const auto& v : atoms) {
    w1.push_back(rank_one(v, y0));
    w2.push_back(rank_one(y0, v));
  }
  const OpMeasure mu1 = OpMeasure::discrete(d, angles, w1);
  const OpMeasure mu2 = OpMeasure::discrete(d, angles, w2);

  GalleryReport rep{"mu1_mu2", p, {}};
  rep.metrics.push_back({"mu1_variation", variation(mu1), variation(nu), 1e-9, "exact"});
  rep.metrics.push_back({"mu1_sot", sot_norm_estimate(mu1, 8, p.seed),
                         semivariation_lb(nu, 64, p.seed), 1e-6, "oracle"});
  rep.metrics.push_back({"mu2_sot", sot_norm_estimate(mu2, 8, p.seed), variation(nu), 1e-6,
                         "oracle"});
  const HVector probe = random_unit_hvector(rng, d);
  rep.metrics.push_back({"mu2_probe_variation", variation(mu_x(mu2, probe)),
                         std::abs(inner(probe, y0)) * variation(nu), 1e-9, "exact"});
  return rep;
}

GalleryReport no_rn_measure(const GalleryParams& p) {
  const int d = pick(p.d, 6);
  const OpMeasure mu = spectral_lazy_measure(d);
  GalleryReport rep{"no_rn_measure", p, {}};
  for (int k = 1; k <= d; ++k)
    rep.metrics.push_back({"coeff_norm_" + std::to_string(k),
                           spectral_norm(fourier(mu, k)), 1.0, 1e-12, "exact"});
  rep.metrics.push_back({"coeff_norm_0", spectral_norm(fourier(mu, 0)), 0.0, 1e-12, "exact"});
  rep.metrics.push_back({"coeff_norm_past_band", spectral_norm(fourier(mu, d + 1)), 0.0,
                         1e-12, "exact"});
  rep.metrics.push_back({"vinf_lower_bound", vinf_norm(mu), 1.0, 1e-12, "exact"});
  return rep;
}

GalleryReport inclusion_chain(const GalleryParams& p) {
  const int m = pick(p.m, 6);
  const int d = pick(p.d, m);
  if (m > d) throw std::invalid_argument("inclusion_chain: needs m <= d");
  std::vector<double> angles;
  std::vector<Operator> weights;
  for (int i = 0; i < m; ++i) {
    angles.push_back(two_pi * i / m);
    weights.push_back(rank_one(HVector::Unit(d, i), HVector::Unit(d, i)));
  }
  const OpMeasure mu = OpMeasure::discrete(d, angles, weights);
  GalleryReport rep{"inclusion_chain", p, {}};
  rep.metrics.push_back({"variation", variation(mu), static_cast<double>(m), 1e-9, "exact"});
  rep.metrics.push_back({"semivariation_lb", semivariation_lb(mu, 64, p.seed), 1.0, 1e-9,
                         "oracle"});
  // any unimodular combination of orthogonal rank-one atoms has norm one
  Rng rng(p.seed);
  Operator acc = Operator::Zero(d, d);
  for (const auto& w : weights) acc += rng.phase() * w;
  rep.metrics.push_back({"random_phase_combination_norm", spectral_norm(acc), 1.0, 1e-12,
                         "exact"});
  rep.metrics.push_back({"variation_to_semivariation_gap",
                         variation(mu) - semivariation_lb(mu, 64, p.seed),
                         static_cast<double>(m) - 1.0, 1e-9, "oracle"});
  return rep;
}

}  // namespace

std::vector<std::string> gallery_names() {
  return {"diag_rank_one", "row_rank_one", "harmonic_multiplication",
          "mu1_mu2",       "no_rn_measure", "inclusion_chain"};
}

GalleryReport run_example(const std::string& name, const GalleryParams& params) {
  if (name == "diag_rank_one") return diag_rank_one(params);
  if (name == "row_rank_one") return row_rank_one(params);
  if (name == "harmonic_multiplication") return harmonic_multiplication(params);
  if (name == "mu1_mu2") return mu1_mu2(params);
  if (name == "no_rn_measure") return no_rn_measure(params);
  if (name == "inclusion_chain") return inclusion_chain(params);
  throw std::out_of_range("unknown gallery example: " + name);
}

std::optional<OpMatrix> gallery_matrix(const std::string& name, const GalleryParams& params) {
  if (name == "diag_rank_one") {
    const int d = pick(params.d, 8);
    const int n = pick(params.n, std::min(d, 6));
    OpMatrix a(n, n, d);
    const auto family = diag_rank_one_family(d, n);
    for (int j = 0; j < n; ++j) a.set_block(j, j, family[j]);
    return a;
  }
  if (name == "row_rank_one") {
    const int d = pick(params.d, 6);
    const int n = pick(params.n, std::min(d, 5));
    Rng rng(params.seed);
    const HVector x = random_hvector(rng, d);
    OpMatrix a(1, n, d);
    const auto family = row_rank_one_family(d, n, x);
    for (int j = 0; j < n; ++j) a.set_block(0, j, family[j]);
    return a;
  }
  return std::nullopt;
}

nlohmann::json report_to_json(const GalleryReport& report) {
  nlohmann::json metrics = nlohmann::json::array();
  for (const auto& m : report.metrics)
    metrics.push_back({{"metric", m.metric},
                       {"computed", m.computed},
                       {"expected", m.expected},
                       {"tol", m.tol},
                       {"source", m.source},
                       {"pass", m.pass()}});
  return {{"name", report.name},
          {"params",
           {{"d", report.params.d},
            {"n", report.params.n},
            {"m", report.params.m},
            {"grid", report.params.grid},
            {"seed", report.params.seed}}},
          {"pass", report.pass()},
          {"metrics", std::move(metrics)}};
}

std::string report_to_csv(const GalleryReport& report, bool header) {
  std::string out;
  if (header) out += "name,metric,computed,expected,tol,pass\n";
  char line[256];
  for (const auto& m : report.metrics) {
    std::snprintf(line, sizeof(line), "%s,%s,%.17g,%.17g,%.17g,%d\n", report.name.c_str(),
                  m.metric.c_str(), m.computed, m.expected, m.tol, m.pass() ? 1 : 0);
    out += line;
  }
  return out;
}

}  // namespace opschur

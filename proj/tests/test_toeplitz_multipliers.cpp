#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "opschur/rng.hpp"
#include "opschur/toeplitz_multipliers.hpp"
#include "oracles.hpp"

using namespace opschur;

namespace {

OpMeasure random_discrete(Rng& rng, int atoms, Eigen::Index d) {
  std::vector<double> angles;
  std::vector<Operator> weights;
  for (int i = 0; i < atoms; ++i) {
    angles.push_back(two_pi * (i + 0.4 * rng.uniform()) / atoms);
    weights.push_back(random_operator(rng, d));
  }
  return OpMeasure::discrete(d, std::move(angles), std::move(weights));
}

OpMatrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols, Eigen::Index d) {
  OpMatrix a(rows, cols, d);
  for (Eigen::Index k = 0; k < rows; ++k)
    for (Eigen::Index j = 0; j < cols; ++j) a.set_block(k, j, random_operator(rng, d));
  return a;
}

HSeq random_seq(Rng& rng, Eigen::Index len, Eigen::Index d) {
  HSeq x(len, d);
  for (Eigen::Index j = 0; j < len; ++j) x[j] = random_hvector(rng, d);
  return x;
}

OpMeasure scalar_density_2cos() {
  TrigPoly<Operator> symbol;  // f(t) = 2 cos t
  symbol.set_coeff(1, Operator::Identity(1, 1));
  symbol.set_coeff(-1, Operator::Identity(1, 1));
  return OpMeasure::density(1, symbol);
}

}  // namespace

TEST_CASE("toeplitz of a point mass at zero is the constant matrix") {
  Rng rng(1);
  const Operator w = random_operator(rng, 2);
  const OpMatrix a = build_toeplitz(OpMeasure::discrete(2, {0.0}, {w}), 3);
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 3; ++j) CHECK((a.block(k, j) - w).norm() == 0.0);
}

TEST_CASE("scalar density recovers the classical Toeplitz matrix") {
  // f(t) = sum_l c_l e^{ilt}; the entry (k,j) must be f^(k-j) = c_{k-j}
  Rng rng(2);
  TrigPoly<Operator> symbol;
  std::map<int, Complex> c;
  for (int l = -2; l <= 2; ++l) {
    const Complex v = rng.cnormal();
    c[l] = v;
    symbol.set_coeff(l, v * Operator::Identity(1, 1));
  }
  const OpMatrix a = build_toeplitz(OpMeasure::density(1, symbol), 4);
  for (int k = 0; k < 4; ++k)
    for (int j = 0; j < 4; ++j) {
      const int l = k - j;
      const Complex expected = (l >= -2 && l <= 2) ? c[l] : Complex(0.0);
      CHECK(std::abs(a.block(k, j)(0, 0) - expected) <= 1e-15);
    }
}

TEST_CASE("toeplitz of the spectral lazy measure is strictly upper triangular") {
  const OpMatrix a = build_toeplitz(spectral_lazy_measure(4), 4);
  for (int k = 0; k < 4; ++k)
    for (int j = 0; j < 4; ++j) {
      const int l = j - k;
      if (l >= 1 && l <= 4) {
        const Operator expected = rank_one(HVector::Unit(4, l - 1), HVector::Unit(4, l - 1));
        CHECK((a.block(k, j) - expected).norm() == 0.0);
      } else {
        CHECK(a.block(k, j).norm() == 0.0);
      }
    }
}

TEST_CASE("toeplitz structure: diagonals are constant and carry the coefficient norm") {
  Rng rng(3);
  const OpMeasure mu = random_discrete(rng, 3, 2);
  const OpMatrix a = build_toeplitz(mu, 4);
  for (int l = -3; l <= 3; ++l) {
    for (int k = 0; k < 4; ++k) {
      const int j = k + l;
      if (j < 0 || j >= 4) continue;
      CHECK((a.block(k, j) - fourier(mu, l)).norm() == 0.0);
    }
    CHECK(opnorm(project(a, IndexMask::diagonal(l))) ==
          doctest::Approx(spectral_norm(fourier(mu, l))).epsilon(1e-9));
  }
}

TEST_CASE("norm ladder for the scalar shift symbol is constant one") {
  TrigPoly<Operator> symbol;
  symbol.set_coeff(1, Operator::Identity(1, 1));
  // N = 1 only sees the zero coefficient of the shift; the ladder starts at 2
  const auto ladder = toeplitz_norm_ladder(OpMeasure::density(1, symbol), {2, 4, 8});
  for (double v : ladder) CHECK(v == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("norm ladder for 2cos(t) matches the tridiagonal closed form") {
  const OpMeasure mu = scalar_density_2cos();
  const std::vector<int> ns = {1, 2, 4, 8, 16};
  const auto ladder = toeplitz_norm_ladder(mu, ns);
  const double bound = vinf_norm(mu);
  double prev = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double closed_form = 2.0 * std::cos(std::numbers::pi / (ns[i] + 1));
    CHECK(ladder[i] == doctest::Approx(closed_form).epsilon(1e-9));
    CHECK(ladder[i] >= prev - 1e-10);
    CHECK(ladder[i] <= bound + 1e-8);
    prev = ladder[i];
  }
}

TEST_CASE("block diagonal symbol ladder is the max of the scalar ladders") {
  TrigPoly<Operator> symbol;  // diag(e^{it}, 2 cos t)
  Operator c1 = Operator::Zero(2, 2), cm1 = Operator::Zero(2, 2);
  c1(0, 0) = 1.0;
  c1(1, 1) = 1.0;
  cm1(1, 1) = 1.0;
  symbol.set_coeff(1, c1);
  symbol.set_coeff(-1, cm1);
  const OpMeasure mu = OpMeasure::density(2, symbol);
  const std::vector<int> ns = {2, 4, 8, 32};
  const auto ladder = toeplitz_norm_ladder(mu, ns);
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double expected = std::max(1.0, 2.0 * std::cos(std::numbers::pi / (ns[i] + 1)));
    CHECK(ladder[i] == doctest::Approx(expected).epsilon(1e-9));
  }
  CHECK(ladder.back() > 1.9);  // approaches vinf = 2
  CHECK_THROWS_AS(toeplitz_norm_ladder(spectral_lazy_measure(2), {2}), std::domain_error);
}

TEST_CASE("compress inverts embed_scalar on unit probes") {
  Rng rng(4);
  Eigen::MatrixXcd b(3, 4);
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 4; ++j) b(k, j) = rng.cnormal();
  const HVector z = random_unit_hvector(rng, 2);
  const OpMatrix emb = embed_scalar(b, z);
  CHECK((compress(emb, z, z) - b).norm() <= 1e-13 * b.norm());
  CHECK(opnorm(emb) == doctest::Approx(oracles::svd_norm(b)).epsilon(1e-9));
}

TEST_CASE("the compression identity from the multiplier lemma") {
  Rng rng(5);
  const OpMatrix a = random_matrix(rng, 3, 3, 2);
  Eigen::MatrixXcd b(3, 3);
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 3; ++j) b(k, j) = rng.cnormal();
  const HVector x0 = random_unit_hvector(rng, 2);
  const HVector y0 = random_unit_hvector(rng, 2);
  const HVector z0 = random_unit_hvector(rng, 2);

  // entrywise: <(T_kj S_kj) x0, y0> = b_kj <T_kj z0, y0> <x0, z0>
  const OpMatrix prod = schur_product(a, embed_scalar(b, z0));
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 3; ++j) {
      const Complex lhs = pairing(prod.block(k, j), x0, y0);
      const Complex rhs = b(k, j) * pairing(a.block(k, j), z0, y0) * inner(x0, z0);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
    }

  // with z0 = x0 the compression turns the block product into a scalar one
  const Eigen::MatrixXcd lhs = compress(schur_product(a, embed_scalar(b, x0)), x0, y0);
  const Eigen::MatrixXcd rhs = compress(a, x0, y0).cwiseProduct(b);
  CHECK((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
}

TEST_CASE("scalar compressions are dominated by the embedded block samples") {
  Rng rng(6);
  const OpMatrix a = random_matrix(rng, 3, 3, 2);
  for (int rep = 0; rep < 10; ++rep) {
    Eigen::MatrixXcd b(3, 3);
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j) b(k, j) = rng.cnormal();
    const HVector z = random_unit_hvector(rng, 2);
    const HVector y = random_unit_hvector(rng, 2);
    const Eigen::MatrixXcd compressed = compress(a, z, y);
    const double scalar_ratio =
        spectral_norm(compressed.cwiseProduct(b).eval()) / spectral_norm(b);
    const double block_ratio = opnorm(schur_product(a, embed_scalar(b, z))) / spectral_norm(b);
    CHECK(scalar_ratio <= block_ratio + 1e-8);
  }
}

TEST_CASE("multiplier action identity for a discrete measure") {
  Rng rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.next_u64() % 4);
    const Eigen::Index d = 1 + static_cast<Eigen::Index>(rng.next_u64() % 3);
    const OpMeasure mu = random_discrete(rng, 1 + static_cast<int>(rng.next_u64() % 3), d);
    const OpMatrix b = random_matrix(rng, n, n, d);
    const HSeq x = random_seq(rng, n, d);
    const HSeq y = random_seq(rng, n, d);
    const Complex direct = seq_inner(apply(schur_product(build_toeplitz(mu, n), b), x), y);
    const Complex rhs = schur_action_rhs(mu, b, x, y);
    CHECK(std::abs(direct - rhs) <= 1e-9 * (1.0 + std::abs(direct)));
  }
}

TEST_CASE("multiplier action identity through the coefficient route") {
  Rng rng(8);
  TrigPoly<Operator> symbol;
  for (int l = -2; l <= 2; ++l) symbol.set_coeff(l, random_operator(rng, 2));
  const OpMeasure mu = OpMeasure::density(2, symbol);
  const OpMatrix b = random_matrix(rng, 4, 4, 2);
  const HSeq x = random_seq(rng, 4, 2);
  const HSeq y = random_seq(rng, 4, 2);
  const Complex direct = seq_inner(apply(schur_product(build_toeplitz(mu, 4), b), x), y);
  CHECK(std::abs(direct - schur_action_rhs(mu, b, x, y)) <= 1e-9 * (1.0 + std::abs(direct)));
}

TEST_CASE("single atom against identity blocks matches the direct product") {
  Rng rng(16);
  const Operator w = random_operator(rng, 2);
  const OpMeasure mu = OpMeasure::discrete(2, {1.9}, {w});
  const OpMatrix b = OpMatrix::constant_identity(3, 3, 2);
  const HSeq x = random_seq(rng, 3, 2);
  const HSeq y = random_seq(rng, 3, 2);
  const Complex direct = seq_inner(apply(schur_product(build_toeplitz(mu, 3), b), x), y);
  CHECK(std::abs(schur_action_rhs(mu, b, x, y) - direct) <= 1e-12 * (1.0 + std::abs(direct)));
}

TEST_CASE("zero coefficient rule gives a zero surrogate") {
  const OpMeasure empty = OpMeasure::lazy(
      2, [](int) -> Operator { return Operator::Zero(2, 2); }, 1, 0);
  CHECK(msot_membership(empty, HVector::Unit(2, 0), {0.5, 0.9}) == 0.0);
}

TEST_CASE("zero measure annihilates the action") {
  const OpMeasure zero = OpMeasure::discrete(2, {}, {});
  Rng rng(9);
  const OpMatrix b = random_matrix(rng, 3, 3, 2);
  const HSeq x = random_seq(rng, 3, 2);
  const HSeq y = random_seq(rng, 3, 2);
  CHECK(std::abs(schur_action_rhs(zero, b, x, y)) == 0.0);
  CHECK(multiplier_upper_bound(zero) == 0.0);
}

TEST_CASE("two-Toeplitz action identity") {
  Rng rng(10);
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.next_u64() % 4);
    const Eigen::Index d = 1 + static_cast<Eigen::Index>(rng.next_u64() % 3);
    const OpMeasure mu = random_discrete(rng, 2, d);
    const OpMeasure nu = random_discrete(rng, 2, d);
    const OpMatrix a = build_toeplitz(mu, n);
    const OpMatrix b = build_toeplitz(nu, n);
    const HSeq x = random_seq(rng, n, d);
    const HSeq y = random_seq(rng, n, d);
    const Complex direct = seq_inner(apply(schur_product(a, b), x), y);
    const Complex rhs = psi_pair(mu, multiplier_action_poly(nu, x, y));
    CHECK(std::abs(direct - rhs) <= 1e-9 * (1.0 + std::abs(direct)));
  }
}

TEST_CASE("variation bounds both Schur orders") {
  Rng rng(11);
  const Operator w = random_operator(rng, 2);
  const OpMeasure mu = OpMeasure::discrete(2, {1.3}, {w});
  const OpMatrix a = build_toeplitz(mu, 3);
  const double bound = multiplier_upper_bound(mu);
  CHECK(bound == doctest::Approx(spectral_norm(w)).epsilon(1e-12));
  for (int rep = 0; rep < 20; ++rep) {
    const OpMatrix b = random_matrix(rng, 3, 3, 2);
    const double nb = opnorm(b);
    CHECK(opnorm(schur_product(a, b)) <= bound * nb + 1e-8);
    CHECK(opnorm(schur_product(b, a)) <= bound * nb + 1e-8);
  }
  CHECK_THROWS_AS(multiplier_upper_bound(spectral_lazy_measure(2)), std::domain_error);
}

TEST_CASE("sampled multiplier lower bounds stay below the variation bound at d = 1") {
  Rng rng(12);
  std::vector<double> angles = {0.7, 3.9};
  std::vector<Operator> weights;
  for (int i = 0; i < 2; ++i) weights.push_back(rng.cnormal() * Operator::Identity(1, 1));
  const OpMeasure mu = OpMeasure::discrete(1, angles, weights);
  const OpMatrix a = build_toeplitz(mu, 4);
  const double bound = multiplier_upper_bound(mu);
  for (Side side : {Side::left, Side::right})
    CHECK(multiplier_norm_lb(a, side, 32) <= bound + 1e-8);
}

TEST_CASE("tensor field closed forms and the corollary inequality") {
  Rng rng(13);
  // single block: the frequency cancels and the L1 norm is a product
  const OpMeasure nu1 = OpMeasure::discrete(2, {0.4}, {random_operator(rng, 2)});
  HSeq x1(1, 2), y1(1, 2);
  x1[0] = random_hvector(rng, 2);
  y1[0] = random_hvector(rng, 2);
  const auto field1 = build_tensor_field(nu1, x1, y1);
  const double expected1 = (fourier(nu1, 0) * x1[0]).norm() * y1[0].norm();
  CHECK(l1_tensor_norm(field1, Grid(16)) == doctest::Approx(expected1).epsilon(1e-10));

  // single-atom measure: L1 of the field obeys the |mu| bound
  for (int rep = 0; rep < 10; ++rep) {
    const Operator w = random_operator(rng, 2);
    const OpMeasure nu = OpMeasure::discrete(2, {rng.angle()}, {w});
    const HSeq x = random_seq(rng, 3, 2);
    const HSeq y = random_seq(rng, 3, 2);
    const double l1 = l1_tensor_norm(build_tensor_field(nu, x, y), Grid::oversampled(5));
    CHECK(l1 <= spectral_norm(w) * x.norm() * y.norm() + 1e-6);
  }

  // zero input gives the zero field
  HSeq zero(3, 2);
  const auto zfield = build_tensor_field(nu1, zero, random_seq(rng, 3, 2));
  CHECK(l1_tensor_norm(zfield, Grid(8)) == 0.0);
}

TEST_CASE("msot membership surrogate") {
  Rng rng(14);
  const Operator w = random_operator(rng, 2);
  const OpMeasure atom = OpMeasure::discrete(2, {2.7}, {w});
  const HVector x = random_hvector(rng, 2);
  CHECK(msot_membership(atom, x, {0.3, 0.7}) == doctest::Approx((w * x).norm()).epsilon(1e-8));

  // lazy spectral measure: closed form per r, supremum climbing to ||x||
  const Eigen::Index d = 4;
  const OpMeasure lazy = spectral_lazy_measure(d);
  const HVector u = random_unit_hvector(rng, d);
  const HMeasure ux = mu_x(lazy, u);
  for (double r : {0.5, 0.9, 0.99}) {
    double closed = 0.0;
    for (int k = 1; k <= d; ++k) closed += std::norm(u(k - 1)) * std::pow(r, 2 * k);
    closed = std::sqrt(closed);
    CHECK(poisson_l1(ux, r, Grid(64)) == doctest::Approx(closed).epsilon(1e-6));
  }
  const double sup = msot_membership(lazy, u, {0.5, 0.9, 0.99, 0.999});
  CHECK(sup <= u.norm() + 1e-9);
  CHECK(sup >= std::pow(0.999, d) * u.norm() - 1e-6);
}

TEST_CASE("toeplitz spec round trip through build") {
  Rng rng(15);
  const ToeplitzSpec spec{random_discrete(rng, 2, 2), 3};
  const OpMatrix a = build_toeplitz(spec);
  CHECK(a.rows() == 3);
  CHECK(a.cols() == 3);
  CHECK((a.block(0, 1) - fourier(spec.measure, 1)).norm() == 0.0);
}

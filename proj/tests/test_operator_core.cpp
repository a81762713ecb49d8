#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "opschur/operator_core.hpp"
#include "opschur/rng.hpp"
#include "oracles.hpp"

using namespace opschur;

TEST_CASE("rank_one on basis vectors is a basis projection") {
  const HVector e0 = HVector::Unit(2, 0);
  const Operator t = rank_one(e0, e0);
  CHECK(t(0, 0) == Complex(1.0));
  CHECK(std::abs(t(0, 1)) == 0.0);
  CHECK(std::abs(t(1, 0)) == 0.0);
  CHECK(std::abs(t(1, 1)) == 0.0);
}

TEST_CASE("rank_one action: (x~ (x) y)(x) = ||x||^2 y") {
  Rng rng(1);
  for (int rep = 0; rep < 20; ++rep) {
    const HVector x = random_hvector(rng, 3), y = random_hvector(rng, 3);
    const HVector lhs = opschur::apply(rank_one(x, y), x);
    const HVector rhs = x.squaredNorm() * y;
    CHECK((lhs - rhs).norm() <= 1e-12 * rhs.norm());
  }
}

TEST_CASE("rank_one norm equals ||x|| ||y||, cross-checked against the SVD") {
  Rng rng(2);
  for (int rep = 0; rep < 20; ++rep) {
    const HVector x = random_hvector(rng, 3), y = random_hvector(rng, 3);
    const Operator t = rank_one(x, y);
    const double expected = x.norm() * y.norm();
    CHECK(spectral_norm(t) == doctest::Approx(expected).epsilon(1e-10));
    CHECK(oracles::svd_norm(t) == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("pairing with the identity is the inner product") {
  Rng rng(3);
  const HVector x = random_hvector(rng, 4), y = random_hvector(rng, 4);
  CHECK(std::abs(pairing(Operator::Identity(4, 4), x, y) - inner(x, y)) <= 1e-14);
}

TEST_CASE("pairing against a rank-one operator factors") {
  Rng rng(4);
  for (int rep = 0; rep < 20; ++rep) {
    const HVector u = random_hvector(rng, 3), v = random_hvector(rng, 3);
    const HVector x = random_hvector(rng, 3), y = random_hvector(rng, 3);
    const Complex lhs = pairing(rank_one(u, v), x, y);
    const Complex rhs = inner(x, u) * inner(v, y);
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("composition pairing identities hold three ways") {
  Rng rng(5);
  for (int rep = 0; rep < 100; ++rep) {
    const Operator t = random_operator(rng, 3), s = random_operator(rng, 3);
    const HVector x = random_hvector(rng, 3), y = random_hvector(rng, 3);
    const Complex a = pairing(compose(t, s), x, y);
    const Complex b = pairing(t, opschur::apply(s, x), y);
    const Complex c = pairing(s, x, opschur::apply(adjoint(t), y));
    CHECK(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)));
    CHECK(std::abs(a - c) <= 1e-12 * (1.0 + std::abs(a)));
  }
}

TEST_CASE("composition with rank-one operators moves through the slots") {
  Rng rng(6);
  for (int rep = 0; rep < 20; ++rep) {
    const Operator t = random_operator(rng, 3);
    const HVector x = random_hvector(rng, 3), y = random_hvector(rng, 3);
    CHECK((compose(t, rank_one(x, y)) - rank_one(x, opschur::apply(t, y))).norm() <= 1e-13);
    CHECK((compose(rank_one(x, y), t) - rank_one(opschur::apply(adjoint(t), x), y)).norm() <= 1e-13);
  }
}

TEST_CASE("adjoint of a composition reverses the factors") {
  Rng rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const Operator t = random_operator(rng, 4), s = random_operator(rng, 4);
    CHECK((adjoint(compose(t, s)) - compose(adjoint(s), adjoint(t))).norm() <= 1e-13);
  }
}

TEST_CASE("spectral_norm closed forms") {
  CHECK(spectral_norm(Operator::Identity(4, 4)) == doctest::Approx(1.0).epsilon(1e-12));
  Operator nil = Operator::Zero(2, 2);
  nil(0, 1) = 2.0;
  CHECK(spectral_norm(nil) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(spectral_norm(Operator::Zero(3, 3)) == 0.0);
}

TEST_CASE("SVD oracle sanity on diagonal matrices") {
  Operator d = Operator::Zero(3, 3);
  d(0, 0) = Complex(0.0, -2.0);
  d(1, 1) = 0.5;
  d(2, 2) = Complex(-3.0, 4.0);
  const Eigen::VectorXd sv = oracles::singular_values(d);
  CHECK(sv(0) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(sv(1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(sv(2) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("spectral_norm agrees with the SVD oracle on random matrices") {
  for (int rep = 0; rep < 200; ++rep) {
    Rng rng(substream(0xC0FFEE, static_cast<std::uint64_t>(rep)));
    const Eigen::Index d = 1 + static_cast<Eigen::Index>(rng.next_u64() % 8);
    const Operator t = random_operator(rng, d);
    const double reference = oracles::svd_norm(t);
    CHECK(spectral_norm(t) == doctest::Approx(reference).epsilon(1e-9));
  }
}

TEST_CASE("spectral_norm handles rectangular stacks") {
  Rng rng(8);
  Eigen::MatrixXcd a(6, 2);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 2; ++j) a(i, j) = rng.cnormal();
  CHECK(spectral_norm(a) == doctest::Approx(oracles::svd_norm(a)).epsilon(1e-10));
  CHECK(spectral_norm(a.adjoint()) == doctest::Approx(oracles::svd_norm(a)).epsilon(1e-10));
}

TEST_CASE("norm inequalities on random pairs") {
  Rng rng(9);
  for (int rep = 0; rep < 100; ++rep) {
    const Operator t = random_operator(rng, 4), s = random_operator(rng, 4);
    const double nt = spectral_norm(t), ns = spectral_norm(s);
    CHECK(spectral_norm(compose(t, s)) <= nt * ns + 1e-10);
    CHECK(spectral_norm(adjoint(t)) == doctest::Approx(nt).epsilon(1e-10));
    const HVector x = random_hvector(rng, 4), y = random_hvector(rng, 4);
    CHECK(std::abs(pairing(t, x, y)) <= nt * x.norm() * y.norm() + 1e-10);
  }
}

TEST_CASE("trace_norm closed forms") {
  Rng rng(10);
  const HVector x = random_hvector(rng, 3), y = random_hvector(rng, 3);
  TensorElement single;
  single.add_term(x, y);
  CHECK(trace_norm(single) == doctest::Approx(x.norm() * y.norm()).epsilon(1e-12));

  TensorElement diag;
  diag.add_term(HVector::Unit(3, 0), HVector::Unit(3, 0));
  diag.add_term(HVector::Unit(3, 1), HVector::Unit(3, 1));
  CHECK(trace_norm(diag) == doctest::Approx(2.0).epsilon(1e-12));

  CHECK(trace_norm(TensorElement{}) == 0.0);
}

TEST_CASE("trace_norm is independent of the elementary decomposition") {
  Rng rng(11);
  const HVector x = random_hvector(rng, 3), y = random_hvector(rng, 3);
  TensorElement whole, split;
  whole.add_term(x, y);
  split.add_term(x / 2.0, y);
  split.add_term(x / 2.0, y);
  CHECK(trace_norm(whole) == doctest::Approx(trace_norm(split)).epsilon(1e-13));
}

TEST_CASE("trace_norm duality: sampled unitaries reach it from below") {
  for (int rep = 0; rep < 5; ++rep) {
    Rng rng(substream(42, static_cast<std::uint64_t>(rep)));
    TensorElement u;
    double triangle = 0.0;
    for (int i = 0; i < 4; ++i) {
      const HVector x = random_hvector(rng, 3), y = random_hvector(rng, 3);
      triangle += x.norm() * y.norm();
      u.add_term(x, y);
    }
    const double tn = trace_norm(u);
    const double lb = oracles::tensor_dual_sampling_lb(u, 2000, 4000,
                                                       substream(43, static_cast<std::uint64_t>(rep)));
    CHECK(lb <= tn + 1e-9);
    CHECK(lb >= 0.98 * tn);
    CHECK(tn <= triangle + 1e-12);
  }
}

TEST_CASE("dimension mismatches are rejected") {
  const HVector x2 = HVector::Zero(2), x3 = HVector::Zero(3);
  CHECK_THROWS_AS(rank_one(x2, x3), std::invalid_argument);
  CHECK_THROWS_AS(pairing(Operator::Identity(2, 2), x3, x2), std::invalid_argument);
  CHECK_THROWS_AS(compose(Operator::Identity(2, 2), Operator::Identity(3, 3)),
                  std::invalid_argument);
  TensorElement u;
  u.add_term(x2, x2);
  CHECK_THROWS_AS(u.add_term(x3, x3), std::invalid_argument);
}

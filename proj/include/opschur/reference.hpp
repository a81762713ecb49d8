#pragma once

// Independent reference routines for the test and acceptance suites.  They
// deliberately avoid the library's computational paths: norms come from
// Eigen's two-sided Jacobi SVD, tensor duality bounds from direct searches
// over unitaries, coefficients from plain DFT sums.  Nothing in the library
// proper calls into this header.

#include <Eigen/SVD>

#include "opschur/operator_core.hpp"
#include "opschur/rng.hpp"
#include "opschur/types.hpp"

namespace opschur::reference {

inline Eigen::VectorXd singular_values(const Eigen::MatrixXcd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues();
}

inline double svd_norm(const Eigen::MatrixXcd& a) {
  if (a.size() == 0) return 0.0;
  return singular_values(a)(0);
}

// plain DFT on a uniform grid; recovers any coefficient of a polynomial whose
// support fits in a window of length grid_size
template <typename Eval>
auto dft_coeff(const Eval& f, int grid_size, int k) {
  auto acc = f(0.0);
  acc.setZero();
  for (int g = 0; g < grid_size; ++g) {
    const double t = two_pi * g / grid_size;
    acc += unit_phase(-k * t) * f(t);
  }
  return (acc / grid_size).eval();
}

// Lower bound for sup over ||T|| <= 1 of |J T(u)|: the supremum is attained
// at a unitary, so sample seeded unitaries and refine the best by greedy
// Givens-rotation hill climbing.  No SVD anywhere.
inline double tensor_dual_sampling_lb(const TensorElement& u, int samples = 10000,
                                      int climb_steps = 4000, std::uint64_t seed = 17) {
  const Eigen::Index d = u.dim();
  if (d == 0) return 0.0;
  auto value = [&](const Operator& t) { return std::abs(tensor_pairing(t, u)); };

  Operator best_u;
  double best = -1.0;
  for (int s = 0; s < samples; ++s) {
    Rng rng(substream(seed, static_cast<std::uint64_t>(s)));
    Operator cand = random_unitary(rng, d);
    const double v = value(cand);
    if (v > best) {
      best = v;
      best_u = cand;
    }
  }

  Rng rng(substream(seed, 0xbeef));
  Operator current = best_u;
  double scale = 0.5;
  for (int step = 0; step < climb_steps; ++step) {
    const auto p = static_cast<Eigen::Index>(rng.next_u64() % static_cast<std::uint64_t>(d));
    const auto q = static_cast<Eigen::Index>(rng.next_u64() % static_cast<std::uint64_t>(d));
    const double theta = scale * rng.normal();
    const double phi = rng.angle();
    Operator cand = current;
    if (p == q) {
      cand.row(p) *= unit_phase(scale * rng.normal());
    } else {
      const Complex c = std::cos(theta);
      const Complex s = std::sin(theta) * unit_phase(phi);
      const Eigen::RowVectorXcd rp = cand.row(p), rq = cand.row(q);
      cand.row(p) = c * rp + s * rq;
      cand.row(q) = -std::conj(s) * rp + c * rq;
    }
    const double v = value(cand);
    if (v > best) {
      best = v;
      current = cand;
    }
    scale *= 0.9995;
  }
  return best;
}

}  // namespace opschur::reference

#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace opschur {

using Complex = std::complex<double>;

// An element of B(H) at H = C^d: a dense d x d complex matrix.
using Operator = Eigen::MatrixXcd;

// An element of H = C^d.
using HVector = Eigen::VectorXcd;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Inner product on H, linear in the first slot, conjugate-linear in the
// second: <u,v> = sum_i u_i * conj(v_i).  Every formula in the library is
// transcribed under this convention.
inline Complex inner(const HVector& u, const HVector& v) {
  if (u.size() != v.size()) throw std::invalid_argument("inner: dimension mismatch");
  return v.dot(u);  // Eigen's dot conjugates its *this operand
}

inline Complex unit_phase(double t) { return {std::cos(t), std::sin(t)}; }

}  // namespace opschur

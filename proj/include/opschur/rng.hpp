#pragma once

#include <cmath>
#include <cstdint>

#include "opschur/types.hpp"

namespace opschur {

// Counter-free splitmix64 stream.  All sampled quantities in the library are
// produced from explicit transforms of these bits, so a fixed seed yields the
// same stream on every platform (no reliance on std::*_distribution, whose
// output is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // standard normal via Box-Muller
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

  Complex cnormal() { return {normal(), normal()}; }

  double angle() { return two_pi * uniform(); }

  Complex phase() { return unit_phase(angle()); }

 private:
  std::uint64_t state_;
};

// Derives an independent substream; used to partition seeded sampling loops
// so results do not depend on evaluation order or worker count.
inline std::uint64_t substream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed ^ (0x9e3779b97f4a7c15ull + index * 0xd1342543de82ef95ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline HVector random_hvector(Rng& rng, Eigen::Index d) {
  HVector x(d);
  for (Eigen::Index i = 0; i < d; ++i) x(i) = rng.cnormal();
  return x;
}

inline HVector random_unit_hvector(Rng& rng, Eigen::Index d) {
  HVector x = random_hvector(rng, d);
  double n = x.norm();
  if (n == 0.0) {
    x.setZero();
    x(0) = 1.0;
    return x;
  }
  return x / n;
}

inline Operator random_operator(Rng& rng, Eigen::Index d) {
  Operator t(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) t(i, j) = rng.cnormal();
  return t;
}

// Haar-like unitary: QR of a complex Ginibre draw with the R-diagonal phases
// absorbed into Q.
inline Operator random_unitary(Rng& rng, Eigen::Index d) {
  Operator g = random_operator(rng, d);
  Eigen::HouseholderQR<Operator> qr(g);
  Operator q = qr.householderQ();
  Operator r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < d; ++i) {
    Complex rii = r(i, i);
    double a = std::abs(rii);
    q.col(i) *= (a == 0.0) ? Complex(1.0) : rii / a;
  }
  return q;
}

}  // namespace opschur

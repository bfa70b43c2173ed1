#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "curvlab/linalg.hpp"

namespace curvlab {

/// Seeded random source with a fixed, platform-independent contract:
///
///  * stream(seed, index) seeds std::mt19937_64 with splitmix64(seed ^ splitmix64(index)),
///    so each sample index owns an independent, replayable stream;
///  * uniform() = (next >> 11) * 2^-53 in [0, 1);
///  * normal() uses Box-Muller on two uniforms (no cached second value);
///  * complex_normal() has independent N(0, 1/2) real and imaginary parts.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(splitmix64(seed ^ splitmix64(index)));
  }

  std::uint64_t next() { return engine_(); }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  cd complex_normal() {
    const double s = std::sqrt(0.5);
    const double re = normal();
    const double im = normal();
    return {s * re, s * im};
  }

  CMat complex_gaussian(Eigen::Index rows, Eigen::Index cols) {
    CMat m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_normal();
    return m;
  }

  CVec complex_gaussian(Eigen::Index size) {
    CVec v(size);
    for (Eigen::Index r = 0; r < size; ++r) v(r) = complex_normal();
    return v;
  }

  /// Haar-distributed unitary matrix (QR of a Gaussian matrix with the
  /// phases of R's diagonal divided out).
  CMat unitary(Eigen::Index n) {
    const CMat g = complex_gaussian(n, n);
    Eigen::HouseholderQR<CMat> qr(g);
    CMat q = qr.householderQ() * CMat::Identity(n, n);
    const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < n; ++k) {
      const double a = std::abs(r(k, k));
      if (a > 0.0) q.col(k) *= r(k, k) / a;
    }
    return q;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace curvlab

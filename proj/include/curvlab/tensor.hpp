#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "curvlab/linalg.hpp"

namespace curvlab {

/// Dense n x n x n complex array. Index order (j, i, k) for symbols
/// written with one upper and two lower indices, e.g. C^j_ik.
class CTensor3 {
 public:
  CTensor3() = default;
  explicit CTensor3(std::size_t n) : n_(n), data_(n * n * n, cd{}) {}

  std::size_t n() const noexcept { return n_; }

  cd& operator()(std::size_t j, std::size_t i, std::size_t k) { return data_[(j * n_ + i) * n_ + k]; }
  const cd& operator()(std::size_t j, std::size_t i, std::size_t k) const {
    return data_[(j * n_ + i) * n_ + k];
  }

  const std::vector<cd>& data() const noexcept { return data_; }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
  }
  double frob_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }
  bool all_finite() const {
    for (const auto& z : data_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }

 private:
  std::size_t n_ = 0;
  std::vector<cd> data_;
};

/// Dense n^4 complex array. For curvature, (i, j, k, l) means the
/// component (i, j-bar, k, l-bar).
class CTensor4 {
 public:
  CTensor4() = default;
  explicit CTensor4(std::size_t n) : n_(n), data_(n * n * n * n, cd{}) {}

  std::size_t n() const noexcept { return n_; }

  cd& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    return data_[((i * n_ + j) * n_ + k) * n_ + l];
  }
  const cd& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return data_[((i * n_ + j) * n_ + k) * n_ + l];
  }

  const std::vector<cd>& data() const noexcept { return data_; }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
  }
  double frob_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

 private:
  std::size_t n_ = 0;
  std::vector<cd> data_;
};

inline double max_abs_diff(const CTensor4& a, const CTensor4& b) {
  double m = 0.0;
  for (std::size_t q = 0; q < a.data().size(); ++q) m = std::max(m, std::abs(a.data()[q] - b.data()[q]));
  return m;
}

inline double max_abs_diff(const CTensor3& a, const CTensor3& b) {
  double m = 0.0;
  for (std::size_t q = 0; q < a.data().size(); ++q) m = std::max(m, std::abs(a.data()[q] - b.data()[q]));
  return m;
}

}  // namespace curvlab

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "hardyz/types.hpp"

namespace hardyz {

/// Immutable table of log n and n^{-1/2} for small n, shared by every
/// Dirichlet-type sum. Entries past the table are computed on demand.
class DirichletTable {
 public:
  static constexpr std::int64_t kSize = std::int64_t{1} << 18;

  static const DirichletTable& instance();

  double log(std::int64_t n) const {
    return n < kSize ? log_[static_cast<std::size_t>(n)] : std::log(static_cast<double>(n));
  }
  double inv_sqrt(std::int64_t n) const {
    return n < kSize ? inv_sqrt_[static_cast<std::size_t>(n)] : 1.0 / std::sqrt(static_cast<double>(n));
  }

 private:
  DirichletTable();
  std::vector<double> log_;
  std::vector<double> inv_sqrt_;
};

/// n^{-s} = exp(-s log n) with the real logarithm supplied.
inline Complex pow_neg(double log_n, Complex s) {
  const double mag = std::exp(-s.real() * log_n);
  const double phase = s.imag() * log_n;
  return {mag * std::cos(phase), -mag * std::sin(phase)};
}

/// Neumaier-compensated complex accumulator; summation order is the call
/// order, so results are reproducible.
class CompensatedSum {
 public:
  void add(Complex v) {
    add_part(sum_re_, comp_re_, v.real());
    add_part(sum_im_, comp_im_, v.imag());
    abs_sum_ += std::abs(v.real()) + std::abs(v.imag());
  }
  Complex value() const { return {sum_re_ + comp_re_, sum_im_ + comp_im_}; }
  /// Sum of |terms|, for rounding-error estimates.
  double magnitude() const { return abs_sum_; }

 private:
  static void add_part(double& sum, double& comp, double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double sum_re_ = 0.0, comp_re_ = 0.0;
  double sum_im_ = 0.0, comp_im_ = 0.0;
  double abs_sum_ = 0.0;
};

}  // namespace hardyz

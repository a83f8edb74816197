#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace hardyz {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kEps = 2.220446049250313e-16;

/// How a value was produced.
enum class Method {
  direct,
  accelerated,
  power,
  integral,
  euler_maclaurin,
  riemann_siegel,
};

std::string_view to_string(Method method) noexcept;

/// A computed value with an absolute error estimate.
struct EvalResult {
  Complex value{};
  double est_err = 0.0;
  std::int64_t terms_used = 0;
  Method method = Method::direct;
};

}  // namespace hardyz

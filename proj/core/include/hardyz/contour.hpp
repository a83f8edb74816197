#pragma once

#include "hardyz/types.hpp"

namespace hardyz {

enum class QuadRule { trapezoid, simpson };

/// Horizontal path x = y - i sigma, |y| <= b = C log t, sampled every h.
struct ContourConfig {
  double sigma = 0.25;
  double C = 8.0;
  double h = 0.005;
  QuadRule rule = QuadRule::simpson;
  /// est_err above this raises an accuracy error.
  double tolerance = 1e-6;
  unsigned threads = 1;
};

enum class ContourKind {
  u_exact,   ///< e^{i theta(t+x) - i theta(t)}, 0 < sigma < 1/2
  u_phase2,  ///< e^{i x theta'(t) + i x^2 theta''(t)/2}, 0 < sigma < 2
  g_kernel,  ///< (t/2pi)^{ix/2}, 1/2 < sigma < 2
};

/// Checks sigma against the interval for `kind`, C >= 2 and 0 < h <= 0.05.
void validate(const ContourConfig& cfg, ContourKind kind);

/// (1/2 pi i) int phase(x) zeta(1/2 + i(t + x)) pi / (2 sinh(pi x / 2)) dx on
/// the truncated path. est_err is the h versus h/2 difference plus the
/// size of the dropped tails.
EvalResult contour_integral(double t, ContourKind kind, const ContourConfig& cfg);

/// U(t); requires t >= 50.
EvalResult u_quad(double t, const ContourConfig& cfg = {});
/// U(t) with the quadratic phase; requires t >= 50.
EvalResult u_quad_phase2(double t, const ContourConfig& cfg = {});
/// The integral form of G; requires t > 2 pi. The default
/// sigma of ContourConfig is outside (1/2, 2), so pass one explicitly.
EvalResult g_integral_quad(double t, const ContourConfig& cfg);

/// Value of (1/2 pi i) int_{-i sigma - inf}^{-i sigma + inf} a / sinh(a x) e^{ixy} dx
/// by the trapezoidal rule. Requires a > 0, sigma > 0, sigma a < pi.
/// The samples have size e^{sigma y} and cancel to O(1), so rounding grows
/// like e^{sigma y} eps.
struct SinhTransform {
  double value = 0.0;
  double imag_residue = 0.0;  ///< imaginary part, zero in exact arithmetic
  double half_width = 0.0;    ///< truncation point of the path
  double h = 0.0;
  std::int64_t nodes = 0;
};
SinhTransform sinh_transform_eval(double a, double sigma, double y);
double sinh_transform(double a, double sigma, double y);

/// e^{pi y / a} / (1 + e^{pi y / a}), evaluated without overflow.
double sinh_transform_closed(double a, double y);

}  // namespace hardyz

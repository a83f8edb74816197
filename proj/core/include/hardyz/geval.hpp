#pragma once

#include <cstdint>

#include "hardyz/types.hpp"

namespace hardyz {

/// Truncation controls for the series representations of G.
struct GSeriesConfig {
  double target_abs_err = 1e-12;
  /// When positive, the truncation target becomes
  /// max(target_abs_err, target_rel_err |G|). Used where |G| is huge, far
  /// into the upper half plane.
  double target_rel_err = 0.0;
  std::int64_t max_terms = 100'000'000;
  int accel_level = 3;  ///< K in the continuation formula, 0 <= K <= 10

  void validate() const;
};

inline constexpr int kMaxAccelLevel = 10;
inline constexpr double kPoleRadius = 1e-6;
inline constexpr double kPowerSeriesRadius = 0.95 * kTwoPi;
inline constexpr double kAutoPowerRadius = 5.0;
inline constexpr int kPowerSeriesTerms = 600;

/// The weight t / (2 pi n^2 + t) attached to n^{-1/2-it}.
double series_weight(double t, std::int64_t n);

/// Partial sum of sum_n n^{-1/2-it} t/(2 pi n^2 + t) for real t >= 0, cut
/// where the integral tail bound (t/2pi)(2/3)N^{-3/2} meets the target.
EvalResult g_direct(double t, const GSeriesConfig& cfg = {});

/// G through the continuation formula with K = cfg.accel_level zeta terms.
/// Valid for |Im t| < 2K + 3/2 away from the poles.
EvalResult g_accel(Complex t, const GSeriesConfig& cfg = {});

/// Small-|t| expansion sum_k (-1)^{k+1} (t/2pi)^k zeta(2k + 1/2 + it),
/// |t| < 0.95 * 2 pi.
EvalResult g_power_small(Complex t, int k_max = kPowerSeriesTerms, const GSeriesConfig& cfg = {});

/// Accel level used by g_auto for a given imaginary part.
int auto_accel_level(double imag);

/// Route selection: power series for |t| < 5, else the continuation formula
/// (direct series only as a fallback for real t > 0).
EvalResult g_auto(Complex t, const GSeriesConfig& cfg = {});

/// G'(t) by term-wise differentiation of the route g_auto would take.
EvalResult g_derivative(Complex t, const GSeriesConfig& cfg = {});

/// Value and derivative in one pass over the continuation formula.
struct GWithDerivative {
  EvalResult value;
  EvalResult derivative;
};
GWithDerivative g_accel_with_derivative(Complex t, const GSeriesConfig& cfg = {});
GWithDerivative g_auto_with_derivative(Complex t, const GSeriesConfig& cfg = {});

/// Pole classification: poles sit at (2k - 1/2) i, k >= 1, and -2 pi n^2, n >= 1.
struct PoleInfo {
  enum class Family { none, imaginary, negative_real } family = Family::none;
  std::int64_t index = 0;  ///< k or n
  double distance = 0.0;   ///< distance from the query point to that pole
};
PoleInfo nearest_pole(Complex t);

/// Closed-form residue of G at one of its poles.
Complex g_residue(Complex pole);

/// Symmetric limit estimate of the residue at `pole`:
/// ((t+ - p) G(t+) + (t- - p) G(t-)) / 2 with t+- = p +- radius e^{i phi}.
Complex residue_limit(Complex pole, double radius, double phi, const GSeriesConfig& cfg = {});

/// e^{i theta(t)} G(t). Real t takes the real-theta path so that
/// 2 Re(rotated_g(t)) reproduces approx_z(t) bit for bit.
Complex rotated_g(Complex t, const GSeriesConfig& cfg = {});

/// 2 Re{e^{i theta(t)} G(t)}, t > 0.
double approx_z(double t, const GSeriesConfig& cfg = {});
EvalResult approx_z_eval(double t, const GSeriesConfig& cfg = {});

}  // namespace hardyz

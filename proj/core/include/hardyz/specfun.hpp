#pragma once

#include <cstdint>
#include <vector>

#include "hardyz/types.hpp"

namespace hardyz {

// ---------------------------------------------------------------------------
// Bernoulli numbers
// ---------------------------------------------------------------------------

/// Even-index Bernoulli numbers, values[n] = B_{2n}; values[0] = B_0 = 1.
struct BernoulliTable {
  std::vector<double> values;

  int max_index() const noexcept { return static_cast<int>(values.size()) - 1; }
  double b2n(int n) const { return values.at(static_cast<std::size_t>(n)); }
};

inline constexpr int kBernoulliMax = 30;

/// B_2, ..., B_{2 n_max} from the exact rational recurrence
/// sum_{k=0}^{m} C(m+1, k) B_k = 0, rounded to double. 1 <= n_max <= 30.
BernoulliTable bernoulli_even(int n_max);

/// Shared immutable table with kBernoulliMax entries.
const BernoulliTable& bernoulli_table();

// ---------------------------------------------------------------------------
// Riemann-Siegel theta
// ---------------------------------------------------------------------------

struct ThetaValue {
  double value = 0.0;
  double est_err = 0.0;
  int terms_used = 0;
};

struct ComplexThetaValue {
  Complex value{};
  double est_err = 0.0;
  int terms_used = 0;
};

/// Below this |t| theta uses log-gamma instead of the asymptotic series.
inline constexpr double kThetaSwitch = 10.0;

ThetaValue theta(double t);
ThetaValue theta_prime(double t);
ThetaValue theta_second(double t);

/// Asymptotic series at complex argument; requires Re t > 0, |t| >= kThetaSwitch.
ComplexThetaValue theta(Complex t);

/// log Gamma(z) on the branch continuous in Re z > 0, via upward shifts and
/// Stirling's series. Requires Re z > 0.
Complex log_gamma(Complex z, double* est_err = nullptr);

// ---------------------------------------------------------------------------
// Zeta by Euler-Maclaurin
// ---------------------------------------------------------------------------

struct ZetaEMConfig {
  std::int64_t cutoff = 10;  ///< N: terms n < N are summed directly
  int order = 8;             ///< M: Euler-Maclaurin correction terms

  /// N = max(10, ceil|Im s| + 10), M = 8.
  static ZetaEMConfig for_argument(Complex s);
};

/// zeta(s) for Re s > -1, s != 1.
EvalResult zeta_em(Complex s, const ZetaEMConfig& cfg);
EvalResult zeta_em(Complex s);

/// The regularized tail sum_{n >= N} n^{-s} and its s-derivative, from the
/// Euler-Maclaurin formula. Corrections are added until one falls below
/// `tol` or `max_order` is reached.
struct ZetaTail {
  Complex value{};
  Complex derivative{};
  double est_err = 0.0;
  int order_used = 0;
  bool converged = false;
};

ZetaTail zeta_tail(Complex s, std::int64_t cutoff, double tol, int max_order = kBernoulliMax - 1,
                   bool with_derivative = false);

/// Same as zeta_tail but with exactly `order` corrections.
ZetaTail zeta_tail_fixed(Complex s, std::int64_t cutoff, int order, bool with_derivative = false);

/// zeta(s), and zeta'(s) on request, by Euler-Maclaurin with cutoff
/// N = max(10, ceil(|Im s| / divisor) + 10) and as many corrections as `tol`
/// needs; N doubles while the corrections fail to converge. Accepts any s
/// the correction series reaches (Re s > -59), s != 1.
struct ZetaValue {
  Complex value{};
  Complex derivative{};
  double est_err = 0.0;
  std::int64_t terms_used = 0;
};
ZetaValue zeta_adaptive(Complex s, double tol, bool with_derivative = false, double divisor = 1.0);

/// zeta'(s) with the same cutoff rule as zeta_em.
EvalResult zeta_em_derivative(Complex s, const ZetaEMConfig& cfg);

// ---------------------------------------------------------------------------
// Hardy Z reference
// ---------------------------------------------------------------------------

enum class ZMethod {
  euler_maclaurin,  ///< Re(e^{i theta} zeta(1/2 + it)) with zeta_em
  riemann_siegel,   ///< main sum plus C0..C4 corrections; |t| >= 2 pi
  automatic,        ///< Riemann-Siegel above kRiemannSiegelMin, else Euler-Maclaurin
};

inline constexpr double kRiemannSiegelMin = 200.0;
inline constexpr double kZRefMaxAbsT = 1e7;

EvalResult z_ref(double t, ZMethod method = ZMethod::automatic);

/// Riemann-Siegel remainder coefficients C0..C4 at fractional part p.
std::vector<double> riemann_siegel_coefficients(double p);

}  // namespace hardyz

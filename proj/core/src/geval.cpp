#include "hardyz/geval.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hardyz/dirichlet.hpp"
#include "hardyz/error.hpp"
#include "hardyz/specfun.hpp"

namespace hardyz {

void GSeriesConfig::validate() const {
  if (!(target_abs_err > 0.0)) raise(ErrorKind::parameter, "GSeriesConfig: target_abs_err must be > 0");
  if (target_rel_err < 0.0) raise(ErrorKind::parameter, "GSeriesConfig: target_rel_err must be >= 0");
  if (max_terms < 1) raise(ErrorKind::parameter, "GSeriesConfig: max_terms must be >= 1");
  if (accel_level < 0 || accel_level > kMaxAccelLevel) {
    raise(ErrorKind::parameter, "GSeriesConfig: accel_level must lie in [0, 10]");
  }
}

double series_weight(double t, std::int64_t n) {
  const double nn = static_cast<double>(n);
  return t / (kTwoPi * nn * nn + t);
}

namespace {

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void check_pole_distance(Complex t, const char* who) {
  const PoleInfo pole = nearest_pole(t);
  if (pole.distance < kPoleRadius) {
    raise(ErrorKind::pole, std::string(who) + ": t lies within 1e-6 of a pole of G");
  }
}

struct AccelPass {
  Complex value{}, derivative{};
  double est_err = 0.0, deriv_err = 0.0;
  std::int64_t terms = 0;
  bool tails_converged = true;
};

// One evaluation of the continuation formula with n < cutoff summed with
// the exact weights and n >= cutoff handled by the K zeta tails plus the
// bounded leftover.
AccelPass accel_pass(Complex t, int accel, std::int64_t cutoff, double tol, bool with_derivative) {
  const DirichletTable& table = DirichletTable::instance();
  const Complex x = t / kTwoPi;
  const Complex s0(0.5 - t.imag(), t.real());  // 1/2 + i t

  CompensatedSum direct, ddirect;
  for (std::int64_t n = 1; n < cutoff; ++n) {
    const double ln = table.log(n);
    const double two_pi_n2 = kTwoPi * static_cast<double>(n) * static_cast<double>(n);
    const Complex p = pow_neg(ln, s0);
    const Complex denom = two_pi_n2 + t;
    const Complex w = t / denom;
    direct.add(p * w);
    if (with_derivative) ddirect.add(p * (Complex(0.0, -ln) * w + two_pi_n2 / (denom * denom)));
  }

  AccelPass out;
  out.value = direct.value();
  out.derivative = ddirect.value();
  double tail_mag = 0.0;
  const double log_cut = std::log(static_cast<double>(cutoff));
  Complex xk(1.0, 0.0);  // x^{k-1} at the top of the loop
  for (int k = 1; k <= accel; ++k) {
    const Complex xk_prev = xk;
    xk *= x;
    const double weight = std::max(std::abs(xk), with_derivative ? k * std::abs(xk_prev) / kTwoPi : 0.0);
    const double tol_k = weight > 0.0 ? tol / (2.0 * accel * weight) : std::numeric_limits<double>::infinity();
    const Complex s = s0 + 2.0 * k;
    const ZetaTail tail = zeta_tail(s, cutoff, tol_k, kBernoulliMax - 1, with_derivative);
    // A tail already accurate to rounding counts as converged.
    const bool tail_ok = tail.converged || tail.est_err <= 16.0 * kEps * std::abs(tail.value);
    out.tails_converged = out.tails_converged && tail_ok;
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    out.value += sign * xk * tail.value;
    tail_mag += std::abs(xk * tail.value);
    out.est_err += std::abs(xk) * tail.est_err;
    out.terms += tail.order_used;
    if (with_derivative) {
      out.derivative += sign * (static_cast<double>(k) * xk_prev / kTwoPi * tail.value + Complex(0.0, 1.0) * xk * tail.derivative);
      out.deriv_err += (k * std::abs(xk_prev) / kTwoPi + std::abs(xk) * (log_cut + 2.0 * tail.order_used + 2.0)) *
                       tail.est_err;
    }
  }
  out.est_err += 4.0 * kEps * (direct.magnitude() + tail_mag);
  out.deriv_err += 4.0 * kEps * (ddirect.magnitude() + tail_mag * (log_cut + 1.0));
  out.terms += cutoff - 1;
  return out;
}

// Bound on the dropped part (-1)^K x^K sum_{n >= N} n^{-2K-1/2-it} t/(2pi n^2 + t),
// and on its t-derivative.
struct Leftover {
  double value_bound = 0.0;
  double deriv_bound = 0.0;
};

Leftover leftover_bound(Complex t, int accel, std::int64_t cutoff) {
  const double at = std::abs(t);
  if (at == 0.0) {
    // x^K vanishes; the derivative survives only for K = 0.
    Leftover out;
    if (accel == 0) {
      const double alpha1 = 1.5 - t.imag();
      out.deriv_bound = std::pow(static_cast<double>(cutoff - 1), -alpha1) / (alpha1 * kTwoPi);
    }
    return out;
  }
  const double ax = at / kTwoPi;
  const double alpha1 = 2.0 * accel + 1.5 - t.imag();  // exponent of the integral tail
  const double n_cut = static_cast<double>(cutoff);
  const double two_pi_n2 = kTwoPi * n_cut * n_cut;
  const bool positive_real = t.imag() == 0.0 && t.real() > 0.0;
  const double c = positive_real ? 1.0 : two_pi_n2 / (two_pi_n2 - at);
  const double base = std::pow(ax, accel) * c * std::pow(n_cut - 1.0, -alpha1) / alpha1;
  Leftover out;
  out.value_bound = ax * base;
  out.deriv_bound = base * (ax * (std::log(n_cut) + 1.0) + (accel + 1.0) / kTwoPi);
  return out;
}

std::int64_t cutoff_for(Complex t, int accel, double tol) {
  const double at = std::abs(t);
  // 2 pi N^2 >= 4|t| keeps every weight bounded and the tails geometric.
  std::int64_t cutoff = std::max<std::int64_t>(2, static_cast<std::int64_t>(std::ceil(std::sqrt(2.0 * at / kPi))) + 1);
  if (accel > 0) {
    // Euler-Maclaurin on zeta(2k + 1/2 + it) wants N beyond |t|/2pi.
    cutoff = std::max<std::int64_t>(cutoff, static_cast<std::int64_t>(std::ceil(1.25 * at / kTwoPi)) + 10);
  }
  if (at == 0.0) return cutoff;
  const double ax = at / kTwoPi;
  const double alpha1 = 2.0 * accel + 1.5 - t.imag();
  const double log_needed = ((accel + 1.0) * std::log(ax) + std::log(4.0 / 3.0) - std::log(alpha1) - std::log(0.5 * tol)) / alpha1;
  if (log_needed > 0.0) {
    double needed = std::exp(log_needed) + 2.0;
    const double b = t.imag();
    if (b > 1.5 && needed > static_cast<double>(cutoff)) {
      // Far above the axis the terms n < N grow like n^{b - 3/2} and their
      // rounding error eventually beats the truncation bound; stop where
      // the sum of the two is smallest.
      const double lead = (accel + 1.0) * std::log(ax) + std::log(4.0 / 3.0) - std::log(alpha1);
      const double log_round = std::log(4.0 * kEps * ax / (b - 1.5));
      const double log_n_opt = (lead - log_round + std::log(alpha1 / (b - 1.5))) / (alpha1 + b - 1.5);
      needed = std::min(needed, std::exp(log_n_opt) + 2.0);
    }
    if (needed > 9e18) return std::numeric_limits<std::int64_t>::max();
    cutoff = std::max<std::int64_t>(cutoff, static_cast<std::int64_t>(std::ceil(needed)));
  }
  return cutoff;
}

GWithDerivative accel_core(Complex t, const GSeriesConfig& cfg, bool with_derivative) {
  cfg.validate();
  if (!is_finite(t)) raise(ErrorKind::parameter, "g_accel: non-finite t");
  const int accel = cfg.accel_level;
  if (std::abs(t.imag()) >= 2.0 * accel + 1.5) {
    raise(ErrorKind::domain, "g_accel: |Im t| must be below 2K + 3/2 = " + std::to_string(2.0 * accel + 1.5) +
                                 "; raise accel_level");
  }
  check_pole_distance(t, "g_accel");

  double tol = cfg.target_abs_err;
  if (cfg.target_rel_err > 0.0) {
    const std::int64_t probe = cutoff_for(t, accel, std::numeric_limits<double>::max());
    const AccelPass rough = accel_pass(t, accel, std::max<std::int64_t>(probe, 16), 1e-6, false);
    tol = std::max(tol, cfg.target_rel_err * std::abs(rough.value));
  }

  std::int64_t cutoff = cutoff_for(t, accel, tol);
  for (int attempt = 0;; ++attempt) {
    if (cutoff > cfg.max_terms) {
      raise(ErrorKind::accuracy, "g_accel: needs " + std::to_string(cutoff) + " terms, above max_terms = " +
                                     std::to_string(cfg.max_terms));
    }
    const AccelPass pass = accel_pass(t, accel, cutoff, tol, with_derivative);
    if (!pass.tails_converged && attempt < 8) {
      cutoff = static_cast<std::int64_t>(std::ceil(1.3 * static_cast<double>(cutoff)));
      continue;
    }
    const Leftover left = leftover_bound(t, accel, cutoff);
    GWithDerivative out;
    out.value.value = pass.value;
    out.value.est_err = pass.est_err + left.value_bound;
    out.value.terms_used = pass.terms;
    out.value.method = Method::accelerated;
    out.derivative.value = pass.derivative;
    out.derivative.est_err = pass.deriv_err + left.deriv_bound;
    out.derivative.terms_used = pass.terms;
    out.derivative.method = Method::accelerated;
    return out;
  }
}

GWithDerivative power_core(Complex t, int k_max, const GSeriesConfig& cfg, bool with_derivative) {
  cfg.validate();
  if (!is_finite(t)) raise(ErrorKind::parameter, "g_power_small: non-finite t");
  if (std::abs(t) >= kPowerSeriesRadius) raise(ErrorKind::domain, "g_power_small: requires |t| < 0.95 * 2 pi");
  if (k_max < 1) raise(ErrorKind::parameter, "g_power_small: k_max must be >= 1");
  const PoleInfo pole = nearest_pole(t);
  if (pole.family == PoleInfo::Family::imaginary && pole.distance < kPoleRadius) {
    raise(ErrorKind::pole, "g_power_small: t is an excluded pole (3i/2, 7i/2 or 11i/2)");
  }

  const Complex x = t / kTwoPi;
  const double r = std::abs(x);
  const double tol = cfg.target_abs_err;
  CompensatedSum sum, dsum;
  double err = 0.0, derr = 0.0;
  std::int64_t terms = 0;
  Complex xk(1.0, 0.0);
  double rest = std::numeric_limits<double>::infinity();
  double drest = 0.0;
  for (int k = 1; k <= k_max; ++k) {
    const Complex xk_prev = xk;
    xk *= x;
    const Complex s(2.0 * k + 0.5 - t.imag(), t.real());
    const ZetaValue z = zeta_adaptive(s, 1e-17, with_derivative);
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    sum.add(sign * xk * z.value);
    err += std::abs(xk) * z.est_err;
    if (with_derivative) {
      dsum.add(sign * (static_cast<double>(k) * xk_prev / kTwoPi * z.value + Complex(0.0, 1.0) * xk * z.derivative));
      derr += (k * std::abs(xk_prev) / kTwoPi + std::abs(xk)) * z.est_err;
    }
    terms += z.terms_used;
    // Geometric bound on everything after term k, using zeta(sigma) for the
    // next real part; derivatives add the k r^{k-1} factor.
    const double sigma_next = 2.0 * (k + 1) + 0.5 - t.imag();
    if (sigma_next > 1.5 && r < 1.0) {
      const double zeta_next = zeta_em(Complex(sigma_next, 0.0)).value.real();
      const double rk1 = std::pow(r, k + 1);
      rest = rk1 * zeta_next / (1.0 - r);
      drest = zeta_next * ((k + 1) * std::pow(r, k) / (kTwoPi * (1.0 - r) * (1.0 - r)) + rk1 / (1.0 - r));
      if (rest < tol && (!with_derivative || drest < tol)) break;
    }
  }

  GWithDerivative out;
  out.value.value = sum.value();
  out.value.est_err = err + rest + 4.0 * kEps * sum.magnitude();
  out.value.terms_used = terms;
  out.value.method = Method::power;
  out.derivative.value = dsum.value();
  out.derivative.est_err = derr + drest + 4.0 * kEps * dsum.magnitude();
  out.derivative.terms_used = terms;
  out.derivative.method = Method::power;
  return out;
}

// Smallest K at or above the coverage rule whose cutoff is within 1.5x of
// the best any K can do; large |t| away from the real axis needs the
// extra decay of higher K.
GSeriesConfig auto_config(Complex t, const GSeriesConfig& cfg) {
  GSeriesConfig out = cfg;
  const int first = std::max(cfg.accel_level, auto_accel_level(t.imag()));
  const double tol = cfg.target_abs_err;
  std::vector<double> cutoffs;
  double best = std::numeric_limits<double>::infinity();
  for (int k = first; k <= kMaxAccelLevel; ++k) {
    cutoffs.push_back(static_cast<double>(cutoff_for(t, k, tol)));
    best = std::min(best, cutoffs.back());
  }
  out.accel_level = first;
  for (int k = first; k <= kMaxAccelLevel; ++k) {
    if (cutoffs[static_cast<std::size_t>(k - first)] <= 1.5 * best) {
      out.accel_level = k;
      break;
    }
  }
  return out;
}

}  // namespace

EvalResult g_direct(double t, const GSeriesConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(t) || t < 0.0) raise(ErrorKind::domain, "g_direct: requires real t > 0");
  EvalResult out;
  out.method = Method::direct;
  if (t == 0.0) return out;

  const double x = t / kTwoPi;
  const double needed = std::pow(x * (2.0 / 3.0) / cfg.target_abs_err, 2.0 / 3.0);
  const double n_min = std::ceil(std::sqrt(x));
  const double n_double = std::max({1.0, n_min, std::ceil(needed)});
  if (n_double > static_cast<double>(cfg.max_terms)) {
    raise(ErrorKind::accuracy, "g_direct: needs about " + std::to_string(n_double) +
                                   " terms for the target error, above max_terms = " + std::to_string(cfg.max_terms));
  }
  const auto cutoff = static_cast<std::int64_t>(n_double);
  const DirichletTable& table = DirichletTable::instance();
  const Complex s0(0.5, t);
  CompensatedSum sum;
  for (std::int64_t n = 1; n <= cutoff; ++n) {
    sum.add(pow_neg(table.log(n), s0) * series_weight(t, n));
  }
  out.value = sum.value();
  out.est_err = x * (2.0 / 3.0) * std::pow(static_cast<double>(cutoff), -1.5) + 4.0 * kEps * sum.magnitude();
  out.terms_used = cutoff;
  return out;
}

EvalResult g_accel(Complex t, const GSeriesConfig& cfg) { return accel_core(t, cfg, false).value; }

GWithDerivative g_accel_with_derivative(Complex t, const GSeriesConfig& cfg) { return accel_core(t, cfg, true); }

EvalResult g_power_small(Complex t, int k_max, const GSeriesConfig& cfg) {
  return power_core(t, k_max, cfg, false).value;
}

int auto_accel_level(double imag) {
  const int rule = static_cast<int>(std::ceil((std::abs(imag) - 1.0) / 2.0)) + 1;
  return std::min(kMaxAccelLevel, std::max(3, rule));
}

EvalResult g_auto(Complex t, const GSeriesConfig& cfg) {
  if (std::abs(t) < kAutoPowerRadius) return g_power_small(t, kPowerSeriesTerms, cfg);
  try {
    return g_accel(t, auto_config(t, cfg));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::accuracy && t.imag() == 0.0 && t.real() > 0.0) return g_direct(t.real(), cfg);
    throw;
  }
}

GWithDerivative g_auto_with_derivative(Complex t, const GSeriesConfig& cfg) {
  if (std::abs(t) < kAutoPowerRadius) return power_core(t, kPowerSeriesTerms, cfg, true);
  return accel_core(t, auto_config(t, cfg), true);
}

EvalResult g_derivative(Complex t, const GSeriesConfig& cfg) { return g_auto_with_derivative(t, cfg).derivative; }

PoleInfo nearest_pole(Complex t) {
  PoleInfo best;
  best.distance = std::numeric_limits<double>::infinity();
  const auto k0 = static_cast<std::int64_t>(std::llround((t.imag() + 0.5) / 2.0));
  for (std::int64_t k = std::max<std::int64_t>(1, k0 - 1); k <= std::max<std::int64_t>(1, k0 + 1); ++k) {
    const double d = std::abs(t - Complex(0.0, 2.0 * static_cast<double>(k) - 0.5));
    if (d < best.distance) best = {PoleInfo::Family::imaginary, k, d};
  }
  const double re = std::max(0.0, -t.real());
  const auto n0 = static_cast<std::int64_t>(std::llround(std::sqrt(re / kTwoPi)));
  for (std::int64_t n = std::max<std::int64_t>(1, n0 - 1); n <= std::max<std::int64_t>(1, n0 + 1); ++n) {
    const double nn = static_cast<double>(n);
    const double d = std::abs(t - Complex(-kTwoPi * nn * nn, 0.0));
    if (d < best.distance) best = {PoleInfo::Family::negative_real, n, d};
  }
  return best;
}

Complex g_residue(Complex pole) {
  const PoleInfo info = nearest_pole(pole);
  if (!(info.distance <= 1e-9 * std::max(1.0, std::abs(pole)))) {
    raise(ErrorKind::parameter, "g_residue: argument is not a pole of G");
  }
  if (info.family == PoleInfo::Family::imaginary) {
    const auto k = static_cast<int>(info.index);
    const Complex p(0.0, 2.0 * k - 0.5);
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    return sign * std::pow(p / kTwoPi, k) * Complex(0.0, -1.0);
  }
  const double n = static_cast<double>(info.index);
  return -kTwoPi * std::pow(n, 1.5) * std::polar(1.0, kTwoPi * n * n * std::log(n));
}

Complex residue_limit(Complex pole, double radius, double phi, const GSeriesConfig& cfg) {
  const Complex step = std::polar(radius, phi);
  const Complex up = step * g_accel(pole + step, cfg).value;
  const Complex down = -step * g_accel(pole - step, cfg).value;
  return 0.5 * (up + down);
}

namespace {

struct Rotated {
  Complex value;
  double est_err;
};

Rotated rotated_eval(Complex t, const GSeriesConfig& cfg) {
  const EvalResult g = g_auto(t, cfg);
  if (t.imag() == 0.0) {
    const ThetaValue th = theta(t.real());
    return {std::polar(1.0, th.value) * g.value, g.est_err + std::abs(g.value) * th.est_err};
  }
  const ComplexThetaValue th = theta(t);
  const Complex rot = std::exp(Complex(0.0, 1.0) * th.value);
  return {rot * g.value, std::abs(rot) * (g.est_err + std::abs(g.value) * th.est_err)};
}

}  // namespace

Complex rotated_g(Complex t, const GSeriesConfig& cfg) { return rotated_eval(t, cfg).value; }

double approx_z(double t, const GSeriesConfig& cfg) {
  if (!(t > 0.0) || !std::isfinite(t)) raise(ErrorKind::domain, "approx_z: requires t > 0");
  return 2.0 * rotated_g(Complex(t, 0.0), cfg).real();
}

EvalResult approx_z_eval(double t, const GSeriesConfig& cfg) {
  if (!(t > 0.0) || !std::isfinite(t)) raise(ErrorKind::domain, "approx_z: requires t > 0");
  const Rotated r = rotated_eval(Complex(t, 0.0), cfg);
  EvalResult out;
  out.value = 2.0 * r.value.real();
  out.est_err = 2.0 * r.est_err;
  out.method = std::abs(t) < kAutoPowerRadius ? Method::power : Method::accelerated;
  return out;
}

}  // namespace hardyz

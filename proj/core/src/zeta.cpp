#include <cmath>
#include <limits>
#include <string>

#include "hardyz/dirichlet.hpp"
#include "hardyz/error.hpp"
#include "hardyz/specfun.hpp"

namespace hardyz {

DirichletTable::DirichletTable() : log_(kSize), inv_sqrt_(kSize) {
  for (std::int64_t n = 1; n < kSize; ++n) {
    log_[static_cast<std::size_t>(n)] = std::log(static_cast<double>(n));
    inv_sqrt_[static_cast<std::size_t>(n)] = 1.0 / std::sqrt(static_cast<double>(n));
  }
}

const DirichletTable& DirichletTable::instance() {
  static const DirichletTable table;
  return table;
}

namespace {

// Bound on the Euler-Maclaurin remainder after `order` corrections, given the
// magnitude of the first omitted one.
double remainder_factor(Complex s, int order) {
  const double denom = s.real() + 2.0 * order + 1.0;
  if (denom <= 0.0) return std::numeric_limits<double>::infinity();
  return std::max(1.0, std::abs(s + (2.0 * order + 1.0)) / denom);
}

struct TailWalker {
  Complex s;
  double log_n;
  double inv_n2;
  bool with_derivative;
  Complex value{}, derivative{};
  // state of correction j: coefficient B_{2j}/(2j)!, rising product P_j,
  // its derivative, and N^{-s-2j+1}
  double factorial = 2.0;
  Complex rising, rising_d{1.0, 0.0}, npow;
  int j = 0;

  TailWalker(Complex s_, std::int64_t cutoff, bool deriv)
      : s(s_), with_derivative(deriv), rising(s_) {
    const double n = static_cast<double>(cutoff);
    log_n = std::log(n);
    inv_n2 = 1.0 / (n * n);
    const Complex ns = std::exp(-s * log_n);
    const Complex sm1 = s - 1.0;
    value = n * ns / sm1 + 0.5 * ns;
    if (with_derivative) {
      derivative = n * ns * (-log_n / sm1 - 1.0 / (sm1 * sm1)) - 0.5 * log_n * ns;
    }
    npow = ns / n;
  }

  // Magnitude and value of the next correction; advances the state.
  std::pair<Complex, Complex> next() {
    ++j;
    if (j > 1) {
      const Complex a = s + (2.0 * j - 3.0);
      const Complex b = s + (2.0 * j - 2.0);
      rising_d = rising_d * a * b + rising * (a + b);
      rising *= a * b;
      npow *= inv_n2;
      factorial *= (2.0 * j - 1.0) * (2.0 * j);
    }
    const double coeff = bernoulli_table().b2n(j) / factorial;
    const Complex term = coeff * rising * npow;
    Complex dterm{};
    if (with_derivative) dterm = coeff * (rising_d - log_n * rising) * npow;
    return {term, dterm};
  }
};

}  // namespace

ZetaTail zeta_tail(Complex s, std::int64_t cutoff, double tol, int max_order, bool with_derivative) {
  if (cutoff < 1) raise(ErrorKind::parameter, "zeta_tail: cutoff must be >= 1");
  max_order = std::clamp(max_order, 0, kBernoulliMax - 1);
  TailWalker walk(s, cutoff, with_derivative);
  ZetaTail out;
  double prev = std::numeric_limits<double>::infinity();
  for (;;) {
    if (walk.j >= max_order) {
      const auto [term, dterm] = walk.next();
      out.est_err = std::abs(term) * remainder_factor(s, out.order_used);
      out.converged = out.est_err <= tol;
      break;
    }
    const auto [term, dterm] = walk.next();
    const double mag = std::abs(term);
    if (mag >= prev) {
      out.est_err = mag * remainder_factor(s, out.order_used);
      out.converged = out.est_err <= tol;
      break;
    }
    if (mag * remainder_factor(s, out.order_used) <= tol) {
      out.est_err = mag * remainder_factor(s, out.order_used);
      out.converged = true;
      break;
    }
    walk.value += term;
    walk.derivative += dterm;
    prev = mag;
    out.order_used = walk.j;
  }
  out.value = walk.value;
  out.derivative = walk.derivative;
  return out;
}

ZetaTail zeta_tail_fixed(Complex s, std::int64_t cutoff, int order, bool with_derivative) {
  if (cutoff < 1) raise(ErrorKind::parameter, "zeta_tail: cutoff must be >= 1");
  if (order < 0 || order > kBernoulliMax) raise(ErrorKind::parameter, "zeta_tail: order out of range");
  TailWalker walk(s, cutoff, with_derivative);
  ZetaTail out;
  double last = 0.0;
  for (int j = 1; j <= order; ++j) {
    const auto [term, dterm] = walk.next();
    walk.value += term;
    walk.derivative += dterm;
    last = std::abs(term);
  }
  out.order_used = order;
  if (order < kBernoulliMax) {
    const auto [term, dterm] = walk.next();
    out.est_err = std::abs(term) * remainder_factor(s, order);
  } else {
    out.est_err = last;
  }
  out.value = walk.value;
  out.derivative = walk.derivative;
  out.converged = true;
  return out;
}

ZetaEMConfig ZetaEMConfig::for_argument(Complex s) {
  ZetaEMConfig cfg;
  cfg.cutoff = std::max<std::int64_t>(10, static_cast<std::int64_t>(std::ceil(std::abs(s.imag()))) + 10);
  cfg.order = 8;
  return cfg;
}

namespace {

void check_zeta_args(Complex s, const ZetaEMConfig& cfg) {
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) raise(ErrorKind::parameter, "zeta_em: non-finite s");
  if (std::abs(s - 1.0) < 1e-14) raise(ErrorKind::pole, "zeta_em: s = 1 is the pole of zeta");
  if (s.real() <= -1.0) raise(ErrorKind::domain, "zeta_em: requires Re s > -1");
  if (cfg.cutoff < 1) raise(ErrorKind::parameter, "zeta_em: cutoff N must be >= 1");
  if (cfg.order < 0 || cfg.order > kBernoulliMax) {
    raise(ErrorKind::parameter, "zeta_em: order M must lie in [0, 30]");
  }
}

}  // namespace

EvalResult zeta_em(Complex s, const ZetaEMConfig& cfg) {
  check_zeta_args(s, cfg);
  const DirichletTable& table = DirichletTable::instance();
  CompensatedSum sum;
  for (std::int64_t n = 1; n < cfg.cutoff; ++n) sum.add(pow_neg(table.log(n), s));
  const ZetaTail tail = zeta_tail_fixed(s, cfg.cutoff, cfg.order);
  EvalResult out;
  out.value = sum.value() + tail.value;
  out.est_err = tail.est_err + 4.0 * kEps * (sum.magnitude() + std::abs(tail.value));
  out.terms_used = (cfg.cutoff - 1) + cfg.order;
  out.method = Method::euler_maclaurin;
  return out;
}

EvalResult zeta_em(Complex s) { return zeta_em(s, ZetaEMConfig::for_argument(s)); }

ZetaValue zeta_adaptive(Complex s, double tol, bool with_derivative, double divisor) {
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) raise(ErrorKind::parameter, "zeta: non-finite s");
  if (std::abs(s - 1.0) < 1e-14) raise(ErrorKind::pole, "zeta: s = 1 is the pole of zeta");
  if (!(divisor > 0.0)) raise(ErrorKind::parameter, "zeta: divisor must be > 0");
  const DirichletTable& table = DirichletTable::instance();
  auto cutoff = std::max<std::int64_t>(10, static_cast<std::int64_t>(std::ceil(std::abs(s.imag()) / divisor)) + 10);
  for (int attempt = 0;; ++attempt) {
    const ZetaTail tail = zeta_tail(s, cutoff, tol, kBernoulliMax - 1, with_derivative);
    if (tail.converged || attempt == 6) {
      CompensatedSum sum, dsum;
      for (std::int64_t n = 1; n < cutoff; ++n) {
        const double ln = table.log(n);
        const Complex p = pow_neg(ln, s);
        sum.add(p);
        if (with_derivative) dsum.add(-ln * p);
      }
      ZetaValue out;
      out.value = sum.value() + tail.value;
      out.derivative = dsum.value() + tail.derivative;
      out.est_err = tail.est_err + 4.0 * kEps * (sum.magnitude() + std::abs(tail.value));
      out.terms_used = cutoff - 1 + tail.order_used;
      return out;
    }
    cutoff *= 2;
  }
}

EvalResult zeta_em_derivative(Complex s, const ZetaEMConfig& cfg) {
  check_zeta_args(s, cfg);
  const DirichletTable& table = DirichletTable::instance();
  CompensatedSum sum;
  for (std::int64_t n = 2; n < cfg.cutoff; ++n) {
    const double ln = table.log(n);
    sum.add(-ln * pow_neg(ln, s));
  }
  const ZetaTail tail = zeta_tail_fixed(s, cfg.cutoff, cfg.order, true);
  EvalResult out;
  out.value = sum.value() + tail.derivative;
  // The derivative of each correction carries an extra log N relative to the
  // correction itself.
  out.est_err = tail.est_err * (std::log(static_cast<double>(cfg.cutoff)) + 2.0 * cfg.order + 2.0) +
                4.0 * kEps * (sum.magnitude() + std::abs(tail.derivative));
  out.terms_used = (cfg.cutoff - 1) + cfg.order;
  out.method = Method::euler_maclaurin;
  return out;
}

}  // namespace hardyz

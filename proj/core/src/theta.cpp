#include <cmath>
#include <limits>
#include <string>

#include "hardyz/error.hpp"
#include "hardyz/specfun.hpp"

namespace hardyz {

namespace {

// (2^{2n-1} - 1) |B_{2n}| / 2^{2n}, shared by the theta, theta' and theta''
// expansions.
double theta_core(int n) {
  const double b = std::abs(bernoulli_table().b2n(n));
  return (std::ldexp(1.0, 2 * n - 1) - 1.0) * b / std::ldexp(1.0, 2 * n);
}

// Sums term(n), n = 1.. while the terms keep shrinking. The first term not
// added is the error estimate.
template <class T, class Term>
T sum_asymptotic(Term term, double scale, double& est_err, int& used) {
  T sum{};
  double prev = std::numeric_limits<double>::infinity();
  used = 0;
  est_err = 0.0;
  for (int n = 1; n <= kBernoulliMax; ++n) {
    const T value = term(n);
    const double mag = std::abs(value);
    if (mag >= prev) {
      est_err = mag;
      return sum;
    }
    if (mag <= 1e-17 * scale) {
      est_err = mag;
      return sum;
    }
    sum += value;
    prev = mag;
    used = n;
  }
  est_err = prev;  // table exhausted; the last term bounds what is left
  return sum;
}

ThetaValue theta_asymptotic(double t) {
  const double lead = 0.5 * t * std::log(t / kTwoPi) - 0.5 * t - kPi / 8.0;
  ThetaValue out;
  const double inv = 1.0 / t;
  const double inv2 = inv * inv;
  const double series = sum_asymptotic<double>(
      [&](int n) { return theta_core(n) / ((2.0 * n - 1.0) * 2.0 * n) * std::pow(inv2, n - 1) * inv; },
      std::abs(lead) + 1.0, out.est_err, out.terms_used);
  out.value = lead + series;
  out.est_err += 4.0 * kEps * (std::abs(lead) + std::abs(t));
  return out;
}

ThetaValue theta_small(double t) {
  double lg_err = 0.0;
  const Complex lg = log_gamma(Complex(0.25, 0.5 * t), &lg_err);
  ThetaValue out;
  out.value = lg.imag() - 0.5 * t * std::log(kPi);
  out.est_err = lg_err + 4.0 * kEps * (1.0 + std::abs(t));
  out.terms_used = 0;
  return out;
}

constexpr double kDiffStep = 1e-4;

}  // namespace

Complex log_gamma(Complex z, double* est_err) {
  if (!(z.real() > 0.0)) {
    raise(ErrorKind::domain, "log_gamma requires Re z > 0");
  }
  constexpr double kStirlingRadius = 15.0;
  Complex shift_sum{};
  Complex w = z;
  while (std::abs(w) < kStirlingRadius) {
    shift_sum += std::log(w);
    w += 1.0;
  }
  const Complex inv = 1.0 / w;
  const Complex inv2 = inv * inv;
  double err = 0.0;
  int used = 0;
  const BernoulliTable& bt = bernoulli_table();
  Complex power = inv;  // w^{-(2k-1)}
  const Complex series = sum_asymptotic<Complex>(
      [&](int k) {
        if (k > 1) power *= inv2;
        return bt.b2n(k) / (2.0 * k * (2.0 * k - 1.0)) * power;
      },
      std::abs(w), err, used);
  const Complex lead = (w - 0.5) * std::log(w) - w + 0.5 * std::log(kTwoPi);
  if (est_err) *est_err = err + 8.0 * kEps * (std::abs(lead) + std::abs(shift_sum));
  return lead + series - shift_sum;
}

ThetaValue theta(double t) {
  if (!std::isfinite(t)) raise(ErrorKind::parameter, "theta: non-finite argument");
  if (t == 0.0) return {};
  const double a = std::abs(t);
  ThetaValue v = a >= kThetaSwitch ? theta_asymptotic(a) : theta_small(a);
  if (t < 0) v.value = -v.value;
  return v;
}

ComplexThetaValue theta(Complex t) {
  if (!(t.real() > 0.0) || std::abs(t) < kThetaSwitch) {
    raise(ErrorKind::domain, "complex theta needs Re t > 0 and |t| >= 10");
  }
  const Complex lead = 0.5 * t * std::log(t / kTwoPi) - 0.5 * t - kPi / 8.0;
  const Complex inv = 1.0 / t;
  const Complex inv2 = inv * inv;
  ComplexThetaValue out;
  Complex power = inv;
  const Complex series = sum_asymptotic<Complex>(
      [&](int n) {
        if (n > 1) power *= inv2;
        return theta_core(n) / ((2.0 * n - 1.0) * 2.0 * n) * power;
      },
      std::abs(lead) + 1.0, out.est_err, out.terms_used);
  out.value = lead + series;
  out.est_err += 4.0 * kEps * (std::abs(lead) + std::abs(t));
  return out;
}

ThetaValue theta_prime(double t) {
  if (!std::isfinite(t)) raise(ErrorKind::parameter, "theta_prime: non-finite argument");
  const double a = std::abs(t);
  ThetaValue out;
  if (a >= kThetaSwitch) {
    const double inv2 = 1.0 / (a * a);
    const double lead = 0.5 * std::log(a / kTwoPi);
    const double series = sum_asymptotic<double>(
        [&](int n) { return -theta_core(n) / (2.0 * n) * std::pow(inv2, n); }, std::abs(lead) + 1.0,
        out.est_err, out.terms_used);
    out.value = lead + series;
    out.est_err += 4.0 * kEps * (std::abs(lead) + 1.0);
    return out;  // even function
  }
  const double h = kDiffStep;
  const double d1 = (theta(t + h).value - theta(t - h).value) / (2.0 * h);
  const double d2 = (theta(t + 2 * h).value - theta(t - 2 * h).value) / (4.0 * h);
  out.value = d1;
  out.est_err = std::abs(d1 - d2) / 3.0 + 4.0 * kEps * (1.0 + a) / h;
  return out;
}

ThetaValue theta_second(double t) {
  if (!std::isfinite(t)) raise(ErrorKind::parameter, "theta_second: non-finite argument");
  const double a = std::abs(t);
  ThetaValue out;
  if (a >= kThetaSwitch) {
    const double inv = 1.0 / a;
    const double inv2 = inv * inv;
    const double lead = 0.5 * inv;
    const double series = sum_asymptotic<double>(
        [&](int n) { return theta_core(n) * std::pow(inv2, n) * inv; }, lead, out.est_err, out.terms_used);
    out.value = lead + series;
    out.est_err += 4.0 * kEps * lead;
    if (t < 0) out.value = -out.value;  // odd function
    return out;
  }
  const double h = kDiffStep;
  const double f0 = theta(t).value;
  const double d1 = (theta(t + h).value - 2.0 * f0 + theta(t - h).value) / (h * h);
  const double d2 = (theta(t + 2 * h).value - 2.0 * f0 + theta(t - 2 * h).value) / (4.0 * h * h);
  out.value = d1;
  out.est_err = std::abs(d1 - d2) / 3.0 + 8.0 * kEps * (1.0 + a) / (h * h);
  return out;
}

}  // namespace hardyz

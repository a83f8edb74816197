#include <array>
#include <cmath>
#include <string>

#include "hardyz/dirichlet.hpp"
#include "hardyz/error.hpp"
#include "hardyz/specfun.hpp"

namespace hardyz {

namespace {

// Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p) is entire; its
// derivatives come from a trapezoidal Cauchy integral on a circle.
constexpr int kCauchyNodes = 64;
constexpr double kCauchyRadius = 0.5;
constexpr int kMaxDerivative = 12;

Complex psi(Complex z) {
  return std::cos(kTwoPi * (z * z - z - 0.0625)) / std::cos(kTwoPi * z);
}

std::array<double, kMaxDerivative + 1> psi_derivatives(double p) {
  std::array<Complex, kCauchyNodes> samples;
  std::array<Complex, kCauchyNodes> unit;
  for (int j = 0; j < kCauchyNodes; ++j) {
    // Half-offset nodes never touch the real axis, where cos(2 pi z) vanishes.
    const double phi = kTwoPi * (j + 0.5) / kCauchyNodes;
    unit[j] = std::polar(1.0, phi);
    samples[j] = psi(p + kCauchyRadius * unit[j]);
  }
  std::array<double, kMaxDerivative + 1> d{};
  double factorial = 1.0;
  double rpow = 1.0;
  for (int k = 0; k <= kMaxDerivative; ++k) {
    if (k > 0) {
      factorial *= k;
      rpow *= kCauchyRadius;
    }
    Complex acc{};
    for (int j = 0; j < kCauchyNodes; ++j) acc += samples[j] * std::pow(std::conj(unit[j]), k);
    d[k] = (acc / static_cast<double>(kCauchyNodes)).real() * factorial / rpow;
  }
  return d;
}

EvalResult z_euler_maclaurin(double a) {
  const Complex s(0.5, a);
  const EvalResult zeta = zeta_em(s);
  const ThetaValue th = theta(a);
  const Complex rotated = std::polar(1.0, th.value) * zeta.value;
  const double zeta_abs = std::abs(zeta.value);
  if (std::abs(rotated.imag()) > 1e-8 * std::max(1.0, zeta_abs)) {
    raise(ErrorKind::accuracy, "z_ref: rotated zeta has imaginary residue " + std::to_string(rotated.imag()) +
                                   " at t = " + std::to_string(a));
  }
  EvalResult out;
  out.value = rotated.real();
  out.est_err = zeta.est_err + zeta_abs * th.est_err;
  out.terms_used = zeta.terms_used;
  out.method = Method::euler_maclaurin;
  return out;
}

EvalResult z_riemann_siegel(double a) {
  if (a < kTwoPi) raise(ErrorKind::domain, "z_ref: Riemann-Siegel route needs |t| >= 2 pi");
  const double tau = std::sqrt(a / kTwoPi);
  const auto n_main = static_cast<std::int64_t>(std::floor(tau));
  const double p = tau - static_cast<double>(n_main);
  const ThetaValue th = theta(a);
  const DirichletTable& table = DirichletTable::instance();
  double main = 0.0;
  double main_abs = 0.0;
  for (std::int64_t n = 1; n <= n_main; ++n) {
    const double term = table.inv_sqrt(n) * std::cos(th.value - a * table.log(n));
    main += term;
    main_abs += std::abs(term);
  }
  const std::vector<double> c = riemann_siegel_coefficients(p);
  double corr = 0.0;
  double inv_pow = 1.0;
  for (double ck : c) {
    corr += ck * inv_pow;
    inv_pow /= tau;
  }
  const double sign = (n_main - 1) % 2 == 0 ? 1.0 : -1.0;
  const double scale = 1.0 / std::sqrt(tau);
  EvalResult out;
  out.value = 2.0 * main + sign * scale * corr;
  // Next omitted correction is C5 tau^{-5}; |C5| stays below 2e-3.
  const double phase_err = (th.est_err + 4.0 * kEps * a * table.log(n_main + 1)) * 2.0 * main_abs;
  out.est_err = 2e-3 * scale * inv_pow + phase_err + 8.0 * kEps * (main_abs + 1.0);
  out.terms_used = n_main + static_cast<std::int64_t>(c.size());
  out.method = Method::riemann_siegel;
  return out;
}

}  // namespace

std::vector<double> riemann_siegel_coefficients(double p) {
  const auto d = psi_derivatives(p);
  const double pi2 = kPi * kPi;
  const double pi4 = pi2 * pi2;
  const double pi6 = pi4 * pi2;
  const double pi8 = pi4 * pi4;
  std::vector<double> c(5);
  c[0] = d[0];
  c[1] = -d[3] / (96.0 * pi2);
  c[2] = d[2] / (64.0 * pi2) + d[6] / (18432.0 * pi4);
  c[3] = -d[1] / (64.0 * pi2) - d[5] / (3840.0 * pi4) - d[9] / (5308416.0 * pi6);
  c[4] = d[0] / (128.0 * pi2) + 19.0 * d[4] / (24576.0 * pi4) + 11.0 * d[8] / (5898240.0 * pi6) +
         d[12] / (2038431744.0 * pi8);
  return c;
}

EvalResult z_ref(double t, ZMethod method) {
  if (!std::isfinite(t)) raise(ErrorKind::parameter, "z_ref: non-finite t");
  const double a = std::abs(t);  // Z is even
  if (a >= kZRefMaxAbsT) raise(ErrorKind::domain, "z_ref: requires |t| < 1e7");
  switch (method) {
    case ZMethod::euler_maclaurin: return z_euler_maclaurin(a);
    case ZMethod::riemann_siegel: return z_riemann_siegel(a);
    case ZMethod::automatic: return a >= kRiemannSiegelMin ? z_riemann_siegel(a) : z_euler_maclaurin(a);
  }
  return z_euler_maclaurin(a);
}

}  // namespace hardyz

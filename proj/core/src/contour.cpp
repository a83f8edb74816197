#include "hardyz/contour.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "hardyz/dirichlet.hpp"
#include "hardyz/error.hpp"
#include "hardyz/format.hpp"
#include "hardyz/parallel.hpp"
#include "hardyz/specfun.hpp"

namespace hardyz {

namespace {

constexpr double kPathZetaTol = 1e-15;
// Cutoff divisor for zeta on the path: N ~ |Im s| / 3 keeps the
// Euler-Maclaurin ratio near (3 / 2 pi)^2.
constexpr double kPathZetaDivisor = 3.0;

const char* kind_name(ContourKind kind) {
  switch (kind) {
    case ContourKind::u_exact: return "u_quad";
    case ContourKind::u_phase2: return "u_quad_phase2";
    case ContourKind::g_kernel: return "g_integral_quad";
  }
  return "contour";
}

}  // namespace

void validate(const ContourConfig& cfg, ContourKind kind) {
  const std::string who = kind_name(kind);
  double lo = 0.0, hi = 0.5;
  if (kind == ContourKind::u_phase2) hi = 2.0;
  if (kind == ContourKind::g_kernel) {
    lo = 0.5;
    hi = 2.0;
  }
  if (!(cfg.sigma > lo && cfg.sigma < hi)) {
    raise(ErrorKind::parameter, who + ": sigma must lie in (" + format_double(lo) + ", " + format_double(hi) + ")");
  }
  if (!(cfg.C >= 2.0)) raise(ErrorKind::parameter, who + ": C must be >= 2");
  if (!(cfg.h > 0.0 && cfg.h <= 0.05)) raise(ErrorKind::parameter, who + ": h must lie in (0, 0.05]");
  if (!(cfg.tolerance > 0.0)) raise(ErrorKind::parameter, who + ": tolerance must be > 0");
}

EvalResult contour_integral(double t, ContourKind kind, const ContourConfig& cfg) {
  validate(cfg, kind);
  const std::string who = kind_name(kind);
  if (!std::isfinite(t)) raise(ErrorKind::parameter, who + ": non-finite t");
  if (kind == ContourKind::g_kernel) {
    if (!(t > kTwoPi)) raise(ErrorKind::domain, who + ": requires t > 2 pi");
  } else if (!(t >= 50.0)) {
    raise(ErrorKind::domain, who + ": requires t >= 50");
  }

  const double b = cfg.C * std::log(t);
  auto coarse = static_cast<std::int64_t>(std::ceil(2.0 * b / cfg.h));
  if (coarse % 2 != 0) ++coarse;
  const std::int64_t fine = 2 * coarse;
  const double hf = 2.0 * b / static_cast<double>(fine);
  const double sigma = cfg.sigma;

  const ThetaValue th = theta(t);
  const double th1 = kind == ContourKind::u_phase2 ? theta_prime(t).value : 0.0;
  const double th2 = kind == ContourKind::u_phase2 ? theta_second(t).value : 0.0;
  const double log_x = std::log(t / kTwoPi);
  const Complex inv_two_pi_i(0.0, -1.0 / kTwoPi);

  auto integrand = [&](double y) {
    const Complex x(y, -sigma);
    const Complex s(0.5 + sigma, t + y);
    const Complex zeta = zeta_adaptive(s, kPathZetaTol, false, kPathZetaDivisor).value;
    Complex phase;
    switch (kind) {
      case ContourKind::u_exact:
        phase = std::exp(Complex(0.0, 1.0) * (theta(Complex(t + y, -sigma)).value - th.value));
        break;
      case ContourKind::u_phase2:
        phase = std::exp(Complex(0.0, 1.0) * (x * th1 + 0.5 * x * x * th2));
        break;
      case ContourKind::g_kernel:
        phase = std::exp(Complex(0.0, 0.5 * log_x) * x);
        break;
    }
    const Complex kernel = kPi / (2.0 * std::sinh(0.5 * kPi * x));
    return inv_two_pi_i * phase * zeta * kernel;
  };

  const Executor ex(cfg.threads);
  const auto f = ex.map(static_cast<std::size_t>(fine + 1),
                        [&](std::size_t j) { return integrand(-b + static_cast<double>(j) * hf); });

  auto rule_sum = [&](std::int64_t stride) {
    const std::int64_t n = fine / stride;
    const double h = hf * static_cast<double>(stride);
    CompensatedSum sum;
    for (std::int64_t j = 0; j <= n; ++j) {
      double w;
      if (cfg.rule == QuadRule::trapezoid) {
        w = (j == 0 || j == n) ? 0.5 : 1.0;
      } else {
        w = (j == 0 || j == n) ? 1.0 / 3.0 : (j % 2 == 1 ? 4.0 / 3.0 : 2.0 / 3.0);
      }
      sum.add(w * f[static_cast<std::size_t>(j * stride)]);
    }
    return std::pair<Complex, double>{h * sum.value(), h * sum.magnitude()};
  };
  const auto [q_fine, mag_fine] = rule_sum(1);
  const auto [q_coarse, mag_coarse] = rule_sum(2);
  (void)mag_coarse;

  // The kernel decays like e^{-pi |y| / 2} past the ends.
  const double tail = (std::abs(f.front()) + std::abs(f.back())) * (2.0 / kPi);
  EvalResult out;
  out.value = q_fine;
  out.est_err = std::abs(q_fine - q_coarse) + tail + 16.0 * kEps * mag_fine;
  out.terms_used = fine + 1;
  out.method = Method::integral;
  if (out.est_err > cfg.tolerance) {
    raise(ErrorKind::accuracy, who + ": estimated error " + format_double(out.est_err) + " above tolerance " +
                                   format_double(cfg.tolerance) + " at t = " + format_double(t));
  }
  return out;
}

EvalResult u_quad(double t, const ContourConfig& cfg) { return contour_integral(t, ContourKind::u_exact, cfg); }

EvalResult u_quad_phase2(double t, const ContourConfig& cfg) {
  return contour_integral(t, ContourKind::u_phase2, cfg);
}

EvalResult g_integral_quad(double t, const ContourConfig& cfg) {
  return contour_integral(t, ContourKind::g_kernel, cfg);
}

SinhTransform sinh_transform_eval(double a, double sigma, double y) {
  if (!(a > 0.0) || !(sigma > 0.0) || !std::isfinite(y)) {
    raise(ErrorKind::parameter, "sinh_transform: requires a > 0, sigma > 0 and finite y");
  }
  if (sigma * a >= kPi) raise(ErrorKind::domain, "sinh_transform: requires sigma a < pi");
  // Nearest singularities of the kernel sit at x = 0 and x = -i pi / a.
  const double gap = kPi / a - sigma;
  const double d = std::min(sigma, gap);
  SinhTransform out;
  // The first alias of the trapezoid sum is e^{2 pi sigma / h} times the
  // transform at y - 2 pi / h; it must stay below 1e-17 relative to 1.
  const double alias_margin = std::log(1e17) + 2.0;
  out.h = std::min(d / 8.0, kTwoPi * gap / (kPi * std::max(y, 0.0) / a + alias_margin));
  out.half_width = (std::log(2.0 * a / 1e-17) + sigma * std::abs(y)) / a;
  const auto half = static_cast<std::int64_t>(std::ceil(out.half_width / out.h));
  out.nodes = 2 * half + 1;
  const double scale = a * std::exp(sigma * y);
  auto f = [&](double u) {
    return scale * std::polar(1.0, u * y) / std::sinh(Complex(a * u, -a * sigma));
  };
  CompensatedSum sum;
  sum.add(f(0.0));
  for (std::int64_t j = 1; j <= half; ++j) {
    const double u = static_cast<double>(j) * out.h;
    sum.add(f(u) + f(-u));
  }
  const Complex value = out.h * sum.value() / Complex(0.0, kTwoPi);
  out.value = value.real();
  out.imag_residue = value.imag();
  return out;
}

double sinh_transform(double a, double sigma, double y) { return sinh_transform_eval(a, sigma, y).value; }

double sinh_transform_closed(double a, double y) {
  const double z = kPi * y / a;
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace hardyz

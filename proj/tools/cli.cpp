#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "hardyz/contour.hpp"
#include "hardyz/error.hpp"
#include "hardyz/format.hpp"
#include "hardyz/geval.hpp"
#include "hardyz/specfun.hpp"
#include "hardyz/study.hpp"
#include "hardyz/zeros.hpp"

namespace hardyz::cli {

namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<double> parse_double(std::string_view text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

double env_double(const char* name, double fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  const auto v = parse_double(raw);
  if (!v) throw UsageError(std::string(name) + ": not a finite number: '" + raw + "'");
  return *v;
}

// Defaults after environment overrides; flags override these in turn.
struct Defaults {
  double contour_C = ContourConfig{}.C;
  double contour_sigma = ContourConfig{}.sigma;
  double target_err = GSeriesConfig{}.target_abs_err;
};

Defaults load_defaults() {
  Defaults d;
  d.contour_C = env_double("HARDYZ_CONTOUR_C", d.contour_C);
  d.contour_sigma = env_double("HARDYZ_CONTOUR_SIGMA", d.contour_sigma);
  d.target_err = env_double("HARDYZ_TARGET_ERR", d.target_err);
  return d;
}

struct Options {
  unsigned threads = 1;
  bool show_config = false;
  double target_err = 0.0;
  double contour_C = 0.0;
  double contour_sigma = 0.0;

  std::string which = "G";
  std::string t_text;

  std::string mode = "complexG";
  double t0 = 0.0;
  double t1 = 0.0;
  double step = kDefaultArgStep;
  std::string out_dir = ".";
  std::string prefix;

  double density = ErrorScanConfig{}.samples_per_unit;
  int windows = 20;
  bool allow_beyond = false;
  bool synthetic = false;
  std::string csv_path;

  std::string figure;
  int nx = 0;
  int ny = 0;
};

GSeriesConfig g_config(const Options& o) {
  GSeriesConfig g;
  g.target_abs_err = o.target_err;
  g.validate();
  return g;
}

ContourConfig contour_config(const Options& o) {
  ContourConfig c;
  c.C = o.contour_C;
  c.sigma = o.contour_sigma;
  c.threads = o.threads;
  return c;
}

void print_config(std::ostream& out, const Options& o) {
  const ErrorScanConfig es;
  out << "threads=" << o.threads << '\n'
      << "target_err=" << format_double(o.target_err) << '\n'
      << "max_terms=" << GSeriesConfig{}.max_terms << '\n'
      << "accel_level=" << GSeriesConfig{}.accel_level << '\n'
      << "contour_C=" << format_double(o.contour_C) << '\n'
      << "contour_sigma=" << format_double(o.contour_sigma) << '\n'
      << "contour_h=" << format_double(ContourConfig{}.h) << '\n'
      << "arg_step=" << format_double(kDefaultArgStep) << '\n'
      << "arg_min_step=" << format_double(kMinArgStep) << '\n'
      << "jump_threshold=" << format_double(CensusConfig{}.jump_threshold) << '\n'
      << "chunk_width=" << format_double(CensusConfig{}.chunk_width) << '\n'
      << "newton_tol=" << format_double(kNewtonTol) << '\n'
      << "newton_max_iter=" << CensusConfig{}.max_iter << '\n'
      << "scan_density=" << format_double(es.samples_per_unit) << '\n'
      << "decay_windows=20\n"
      << "xray_target_rel_err=" << format_double(XrayConfig::default_g().target_rel_err) << '\n';
}

fs::path open_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) raise(ErrorKind::io, "cannot create " + dir + ": " + ec.message());
  return fs::path(dir);
}

template <class Writer>
void write_file(const fs::path& path, Writer&& writer) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) raise(ErrorKind::io, "cannot open " + path.string() + " for writing");
  writer(f);
  f.flush();
  if (!f) raise(ErrorKind::io, "write to " + path.string() + " failed");
}

void print_eval(std::ostream& out, const std::string& which, Complex t, Complex value, double est_err,
                std::string_view method, std::int64_t terms) {
  out << which << " t=" << format_double(t.real()) << ',' << format_double(t.imag())
      << " value=" << format_double(value.real()) << ',' << format_double(value.imag())
      << " est_err=" << format_double(est_err) << " method=" << method << " terms_used=" << terms << '\n';
}

int cmd_eval(const Options& o, std::ostream& out) {
  const auto t = parse_complex(o.t_text);
  if (!t) throw UsageError("--t: cannot parse '" + o.t_text + "' as a real or complex number");
  const bool real = t->imag() == 0.0;
  auto need_real = [&] {
    if (!real) throw UsageError("--which " + o.which + " takes a real t");
  };
  if (o.which == "G") {
    const EvalResult r = g_auto(*t, g_config(o));
    print_eval(out, o.which, *t, r.value, r.est_err, to_string(r.method), r.terms_used);
  } else if (o.which == "U") {
    need_real();
    const EvalResult r = u_quad(t->real(), contour_config(o));
    print_eval(out, o.which, *t, r.value, r.est_err, to_string(r.method), r.terms_used);
  } else if (o.which == "Z") {
    need_real();
    const EvalResult r = z_ref(t->real());
    print_eval(out, o.which, *t, r.value, r.est_err, to_string(r.method), r.terms_used);
  } else if (o.which == "approxZ") {
    need_real();
    const EvalResult r = approx_z_eval(t->real(), g_config(o));
    print_eval(out, o.which, *t, r.value, r.est_err, to_string(r.method), r.terms_used);
  } else {
    need_real();
    const ThetaValue th = theta(t->real());
    const std::string_view method = std::abs(t->real()) < kThetaSwitch ? "log_gamma" : "asymptotic";
    print_eval(out, o.which, *t, th.value, th.est_err, method, th.terms_used);
  }
  return kExitOk;
}

void summarize(std::ostream& out, const std::vector<ZeroRecord>& zeros) {
  double deepest = 0.0;
  double max_residual = 0.0;
  for (const ZeroRecord& z : zeros) {
    deepest = std::min(deepest, z.position.imag());
    max_residual = std::max(max_residual, z.residual);
  }
  out << "count=" << zeros.size() << " deepest_im=" << format_double(deepest)
      << " max_residual=" << format_double(max_residual);
}

int cmd_zeros(const Options& o, std::ostream& out) {
  if (!(o.t0 >= 0.0) || !(o.t1 >= o.t0)) throw UsageError("zeros: requires 0 <= t0 <= t1");
  if (!(o.step > 0.0)) throw UsageError("zeros: --step must be positive");
  const fs::path dir = open_dir(o.out_dir);
  const std::string prefix = o.prefix.empty() ? "zeros_" + o.mode : o.prefix;

  std::vector<ZeroRecord> zeros;
  Census census;
  const bool complex_mode = o.mode == "complexG";
  if (o.t1 > o.t0) {
    if (complex_mode) {
      CensusConfig cc;
      cc.step = o.step;
      cc.g = g_config(o);
      cc.threads = o.threads;
      census = find_negative_im_zeros(o.t0, o.t1, cc);
      zeros = census.zeros;
    } else {
      RealScanConfig rc;
      rc.grid = {o.t0, o.t1, o.step};
      rc.g = g_config(o);
      rc.threads = o.threads;
      zeros = scan_real_zeros(o.mode == "realF" ? RealFunction::approx_z : RealFunction::z_ref, rc);
    }
  }
  write_file(dir / (prefix + ".csv"), [&](std::ostream& f) { write_catalog_csv(f, zeros); });
  write_file(dir / (prefix + ".json"), [&](std::ostream& f) { write_catalog_json(f, zeros); });
  if (complex_mode) {
    write_file(dir / (prefix + "_evidence.csv"), [&](std::ostream& f) { write_evidence_csv(f, census.evidence); });
    write_file(dir / (prefix + "_chunks.csv"), [&](std::ostream& f) { write_chunk_counts_csv(f, census.chunks); });
  }
  out << "mode=" << o.mode << ' ';
  summarize(out, zeros);
  if (complex_mode) {
    out << " coarse_winding_count=" << census.coarse_winding_count << " seeds=" << census.evidence.size();
  }
  out << '\n';
  return kExitOk;
}

std::vector<ScanRow> synthetic_rows() {
  // Log-spaced t over (100, 1e4) with an exact t^{-5/6} profile. A count
  // divisible by the window count puts the same pattern in every window.
  std::vector<ScanRow> rows;
  const int n = 2000;
  for (int i = 0; i < n; ++i) {
    ScanRow r;
    r.t = 100.0 * std::pow(100.0, static_cast<double>(i) / (n - 1));
    r.abs_diff = std::pow(r.t, -5.0 / 6.0);
    r.approx = r.abs_diff;
    rows.push_back(r);
  }
  return rows;
}

int cmd_errscan(const Options& o, std::ostream& out) {
  std::vector<ScanRow> rows;
  if (o.synthetic) {
    rows = synthetic_rows();
  } else {
    if (!(o.t0 >= 50.0) || !(o.t1 > o.t0)) throw UsageError("errscan: requires 50 <= t0 < t1");
    if (o.t1 > 1e4 && !o.allow_beyond) throw UsageError("errscan: t1 above 1e4 needs --allow-beyond");
    if (!(o.density > 0.0)) throw UsageError("errscan: --density must be positive");
    ErrorScanConfig cfg;
    cfg.samples_per_unit = o.density;
    cfg.g = g_config(o);
    cfg.allow_beyond = o.allow_beyond;
    cfg.threads = o.threads;
    rows = error_scan(o.t0, o.t1, cfg);
  }
  if (!o.csv_path.empty()) {
    const fs::path path(o.csv_path);
    if (path.has_parent_path()) open_dir(path.parent_path().string());
    write_file(path, [&](std::ostream& f) { write_scan_csv(f, rows); });
  }
  double max_diff = 0.0;
  for (const ScanRow& r : rows) max_diff = std::max(max_diff, r.abs_diff);
  out << "rows=" << rows.size() << " max_abs_diff=" << format_double(max_diff);
  const double t_lo = rows.front().t, t_hi = rows.back().t;
  if (t_hi >= 10.0 * t_lo) {
    const DecayFit fit = fit_decay_exponent(rows, o.windows);
    out << " slope=" << format_double(fit.slope) << " intercept=" << format_double(fit.intercept)
        << " r_squared=" << format_double(fit.r_squared) << " windows=" << fit.window_count;
  } else {
    out << " slope=n/a (range spans less than a decade)";
  }
  out << '\n';
  return kExitOk;
}

int cmd_figure(const Options& o, std::ostream& out) {
  if (o.figure != "fig1" && o.figure != "fig2" && o.figure != "fig3") {
    throw UsageError("figure: unknown name '" + o.figure + "' (expected fig1, fig2 or fig3)");
  }
  if ((o.nx != 0 && o.nx < 16) || (o.ny != 0 && o.ny < 16)) throw UsageError("figure: --nx and --ny must be >= 16");
  BundleOptions opts;
  opts.nx = o.nx;
  opts.ny = o.ny;
  opts.xray.threads = o.threads;
  const BundleFiles files = figure_data_bundle(o.figure, o.out_dir, opts);
  out << "grid=" << files.grid.string() << " meta=" << files.meta.string();
  if (!files.overlay.empty()) out << " overlay=" << files.overlay.string();
  out << '\n';
  return kExitOk;
}

int cmd_selftest(const Options& o, std::ostream& out) {
  int failures = 0;
  auto check = [&](const char* name, bool ok, double measured) {
    out << (ok ? "PASS " : "FAIL ") << name << " measured=" << format_double(measured) << '\n';
    if (!ok) ++failures;
  };
  const GSeriesConfig g = g_config(o);
  check("theta(0)=0", theta(0.0).value == 0.0, theta(0.0).value);
  {
    GSeriesConfig loose = g;
    loose.target_abs_err = 1e-8;
    const double d = std::abs(g_accel(100.0, g).value - g_direct(100.0, loose).value);
    check("G(100) accel vs direct", d < 2e-8, d);
  }
  {
    const double d = std::abs(approx_z(1000.0, g) - z_ref(1000.0).value.real());
    check("|approxZ - Z| at 1000", d < 0.05, d);
  }
  {
    RealScanConfig rc;
    rc.grid = {14.0, 15.0, 0.05};
    const auto zs = scan_real_zeros(RealFunction::z_ref, rc);
    const double at = zs.size() == 1 ? zs[0].position.real() : 0.0;
    check("one zero of Z in (14,15)", zs.size() == 1 && std::abs(at - 14.134725141734693) < 1e-9, at);
  }
  {
    const double d = std::abs(sinh_transform(1.0, 1.0, 0.5) - sinh_transform_closed(1.0, 0.5));
    check("sinh kernel transform", d < 1e-10, d);
  }
  {
    const DecayFit fit = fit_decay_exponent(synthetic_rows());
    check("synthetic decay slope", std::abs(fit.slope + 5.0 / 6.0) < 1e-6, fit.slope);
  }
  out << (failures == 0 ? "selftest passed" : "selftest failed") << '\n';
  return failures == 0 ? kExitOk : kExitFailure;
}

}  // namespace

std::optional<Complex> parse_complex(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) return std::nullopt;
  if (auto v = parse_double(text)) return Complex(*v, 0.0);
  if (text.back() != 'i') return std::nullopt;
  text.remove_suffix(1);
  // Split at the last sign that is neither leading nor part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = text.size(); k-- > 1;) {
    if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_of = [](std::string_view s) -> std::optional<double> {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    if (s.front() == '+') s.remove_prefix(1);
    return parse_double(s);
  };
  if (split == std::string_view::npos) {
    const auto im = imag_of(text);
    if (!im) return std::nullopt;
    return Complex(0.0, *im);
  }
  const auto re = parse_double(text.substr(0, split));
  const auto im = imag_of(text.substr(split));
  if (!re || !im) return std::nullopt;
  return Complex(*re, *im);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  try {
    const Defaults d = load_defaults();
    o.target_err = d.target_err;
    o.contour_C = d.contour_C;
    o.contour_sigma = d.contour_sigma;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App app{"Hardy Z, the approximant G and its complex zeros.\n"
               "Environment: HARDYZ_CONTOUR_C, HARDYZ_CONTOUR_SIGMA and HARDYZ_TARGET_ERR\n"
               "replace the defaults of --C, --sigma and --target-err.",
               "hardyz"};
  app.set_version_flag("--version", std::string(version()));
  app.add_option("--threads", o.threads, "Worker threads; output does not depend on it")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();
  app.add_flag("--show-config", o.show_config, "Print every resolved default and exit");
  app.add_option("--target-err", o.target_err, "Absolute truncation target for the series of G")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--C", o.contour_C, "Contour half-length factor: |y| <= C log t")->capture_default_str();
  app.add_option("--sigma", o.contour_sigma, "Contour offset below the real axis")->capture_default_str();
  app.require_subcommand(0, 1);
  app.fallthrough();

  auto* eval = app.add_subcommand("eval", "Evaluate G, U, Z, approxZ or theta at one point");
  eval->add_option("--which", o.which, "G, U, Z, approxZ or theta")
      ->check(CLI::IsMember({"G", "U", "Z", "approxZ", "theta"}))
      ->capture_default_str();
  eval->add_option("--t", o.t_text, "Argument; G accepts complex values such as 415-0.0027i")->required();

  auto* zeros = app.add_subcommand("zeros", "Catalogue zeros on [t0, t1]");
  zeros->add_option("--mode", o.mode, "realF (approxZ), realZ (Z) or complexG (G below the axis)")
      ->check(CLI::IsMember({"realF", "realZ", "complexG"}))
      ->capture_default_str();
  zeros->add_option("--t0", o.t0, "Range start")->required();
  zeros->add_option("--t1", o.t1, "Range end")->required();
  zeros->add_option("--step", o.step, "Sampling step")->capture_default_str();
  zeros->add_option("--out", o.out_dir, "Output directory")->capture_default_str();
  zeros->add_option("--prefix", o.prefix, "File name prefix (default zeros_<mode>)");

  auto* errscan = app.add_subcommand("errscan", "Scan |Z - approxZ| and fit its decay");
  errscan->add_option("--t0", o.t0, "Range start, >= 50");
  errscan->add_option("--t1", o.t1, "Range end, <= 1e4 unless --allow-beyond");
  errscan->add_option("--density", o.density, "Samples per unit of t")->capture_default_str();
  errscan->add_option("--windows", o.windows, "Windows for the decay fit")
      ->check(CLI::Range(5, 100000))
      ->capture_default_str();
  errscan->add_option("--csv", o.csv_path, "Write the scan rows here");
  errscan->add_flag("--allow-beyond", o.allow_beyond, "Allow t1 > 1e4");
  errscan->add_flag("--synthetic", o.synthetic, "Fit an exact t^(-5/6) profile instead of scanning");

  auto* figure = app.add_subcommand("figure", "Write the data bundle of a figure");
  figure->add_option("name", o.figure, "fig1, fig2 or fig3")->required();
  figure->add_option("--out", o.out_dir, "Output directory")->capture_default_str();
  figure->add_option("--nx", o.nx, "Grid columns (0 keeps the figure's default)");
  figure->add_option("--ny", o.ny, "Grid rows (0 keeps the figure's default)");

  auto* selftest = app.add_subcommand("selftest", "Run quick internal checks");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (o.show_config) {
      print_config(out, o);
      return kExitOk;
    }
    if (eval->parsed()) return cmd_eval(o, out);
    if (zeros->parsed()) return cmd_zeros(o, out);
    if (errscan->parsed()) return cmd_errscan(o, out);
    if (figure->parsed()) return cmd_figure(o, out);
    if (selftest->parsed()) return cmd_selftest(o, out);
    out << app.help();
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return e.kind() == ErrorKind::parameter ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace hardyz::cli

#include "hardyz/study.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "hardyz/error.hpp"
#include "hardyz/format.hpp"
#include "hardyz/parallel.hpp"
#include "hardyz/zeros.hpp"

#ifndef HARDYZ_VERSION
#define HARDYZ_VERSION "0.0.0"
#endif

namespace hardyz {

std::string_view version() noexcept { return HARDYZ_VERSION; }

// ---------------------------------------------------------------------------
// Error scan
// ---------------------------------------------------------------------------

std::vector<ScanRow> error_scan(double t0, double t1, const ErrorScanConfig& cfg) {
  if (!std::isfinite(t0) || !std::isfinite(t1) || !(t0 >= 50.0) || !(t1 > t0)) {
    raise(ErrorKind::parameter, "error_scan: requires 50 <= t0 < t1");
  }
  if (t1 > 1e4 && !cfg.allow_beyond) raise(ErrorKind::parameter, "error_scan: t1 above 1e4 needs allow_beyond");
  if (!(cfg.samples_per_unit > 0.0)) raise(ErrorKind::parameter, "error_scan: samples_per_unit must be > 0");
  const auto n = static_cast<std::int64_t>(std::ceil((t1 - t0) * cfg.samples_per_unit));
  const double dt = (t1 - t0) / static_cast<double>(n);
  const Executor ex(cfg.threads);
  return ex.map(static_cast<std::size_t>(n + 1), [&](std::size_t i) {
    ScanRow row;
    row.t = i == static_cast<std::size_t>(n) ? t1 : t0 + static_cast<double>(i) * dt;
    try {
      row.z = z_ref(row.t, cfg.z_method).value.real();
      row.approx = approx_z(row.t, cfg.g);
    } catch (const Error& e) {
      throw Error(e.kind(), "error_scan aborted at t = " + format_double(row.t) + ": " + e.what());
    }
    row.abs_diff = std::abs(row.z - row.approx);
    return row;
  });
}

void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows) {
  out << "t,z,approx,abs_diff\n";
  for (const ScanRow& r : rows) {
    out << format_double(r.t) << ',' << format_double(r.z) << ',' << format_double(r.approx) << ','
        << format_double(r.abs_diff) << '\n';
  }
}

DecayFit fit_decay_exponent(const std::vector<ScanRow>& rows, int windows) {
  if (windows < 5) raise(ErrorKind::parameter, "fit_decay_exponent: needs at least 5 windows");
  if (rows.empty()) raise(ErrorKind::parameter, "fit_decay_exponent: no rows");
  double t_min = rows.front().t, t_max = rows.front().t;
  for (const ScanRow& r : rows) {
    t_min = std::min(t_min, r.t);
    t_max = std::max(t_max, r.t);
  }
  if (!(t_min > 0.0) || t_max < 10.0 * t_min * (1.0 - 1e-12)) {
    raise(ErrorKind::parameter, "fit_decay_exponent: rows must span at least one decade");
  }
  const double log_lo = std::log(t_min);
  const double width = (std::log(t_max) - log_lo) / windows;
  std::vector<std::vector<const ScanRow*>> bins(static_cast<std::size_t>(windows));
  for (const ScanRow& r : rows) {
    auto k = static_cast<int>(std::floor((std::log(r.t) - log_lo) / width));
    k = std::clamp(k, 0, windows - 1);
    bins[static_cast<std::size_t>(k)].push_back(&r);
  }
  std::vector<double> xs, ys;
  for (auto& bin : bins) {
    if (bin.empty()) continue;
    double peak = 0.0;
    for (const ScanRow* r : bin) peak = std::max(peak, r->abs_diff);
    if (!(peak > 0.0)) continue;
    std::sort(bin.begin(), bin.end(), [](const ScanRow* a, const ScanRow* b) { return a->t < b->t; });
    const std::size_t m = bin.size();
    const double median = m % 2 == 1 ? bin[m / 2]->t : 0.5 * (bin[m / 2 - 1]->t + bin[m / 2]->t);
    xs.push_back(std::log(median));
    ys.push_back(std::log(peak));
  }
  if (xs.size() < 5) raise(ErrorKind::parameter, "fit_decay_exponent: fewer than 5 usable windows");
  const auto m = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  DecayFit fit;
  fit.window_count = static_cast<int>(xs.size());
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += e * e;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

// ---------------------------------------------------------------------------
// X-ray grids
// ---------------------------------------------------------------------------

Complex XrayGrid::point(int ix, int iy) const {
  const double re = ix == nx - 1 ? rect.re_max : rect.re_min + ix * (rect.re_max - rect.re_min) / (nx - 1);
  const double im = iy == ny - 1 ? rect.im_max : rect.im_min + iy * (rect.im_max - rect.im_min) / (ny - 1);
  return {re, im};
}

XrayGrid xray_grid(const Rectangle& rect, int nx, int ny, const XrayConfig& cfg) {
  if (nx < 16 || ny < 16) raise(ErrorKind::parameter, "xray_grid: nx and ny must be >= 16");
  if (!(rect.re_max > rect.re_min) || !(rect.im_max > rect.im_min)) {
    raise(ErrorKind::parameter, "xray_grid: empty rectangle");
  }
  // Every pole of G has Re t <= 0, so this also keeps them out.
  if (!(rect.re_min >= 20.0)) raise(ErrorKind::parameter, "xray_grid: requires re_min >= 20");
  XrayGrid grid;
  grid.rect = rect;
  grid.nx = nx;
  grid.ny = ny;
  const Executor ex(cfg.threads);
  grid.values = ex.map(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny), [&](std::size_t k) {
    const Complex t = grid.point(static_cast<int>(k % nx), static_cast<int>(k / nx));
    const Complex v = rotated_g(t, cfg.g);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      raise(ErrorKind::accuracy, "xray_grid: non-finite sample at " + format_double(t.real()) + " " +
                                     format_double(t.imag()) + "i");
    }
    return v;
  });
  return grid;
}

void write_grid_csv(std::ostream& out, const XrayGrid& grid) {
  out << "re_t,im_t,re_val,im_val\n";
  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      const Complex t = grid.point(ix, iy);
      const Complex v = grid.at(ix, iy);
      out << format_double(t.real()) << ',' << format_double(t.imag()) << ',' << format_double(v.real()) << ','
          << format_double(v.imag()) << '\n';
    }
  }
}

// ---------------------------------------------------------------------------
// Figure bundles
// ---------------------------------------------------------------------------

FigureSpec figure_spec(std::string_view name) {
  if (name == "fig1") return {"fig1", {1000.0, 1040.0, -10.0, 10.0}, 400, 200};
  if (name == "fig2") return {"fig2", {200040.0, 200060.0, -2.0, 4.0}, 400, 120};
  if (name == "fig3") return {"fig3", {50.0, 100.0, -20.0, 20.0}, 250, 200};
  raise(ErrorKind::parameter, "unknown figure '" + std::string(name) + "' (expected fig1, fig2 or fig3)");
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(ErrorKind::io, "cannot open " + path.string() + " for writing: " + std::strerror(errno));
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) raise(ErrorKind::io, "write to " + path.string() + " failed: " + std::strerror(errno));
}

}  // namespace

BundleFiles figure_data_bundle(std::string_view name, const std::filesystem::path& out_dir, const BundleOptions& opts) {
  FigureSpec fig = figure_spec(name);
  if (opts.nx > 0) fig.nx = opts.nx;
  if (opts.ny > 0) fig.ny = opts.ny;

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) raise(ErrorKind::io, "cannot create " + out_dir.string() + ": " + ec.message());

  const XrayGrid grid = xray_grid(fig.rect, fig.nx, fig.ny, opts.xray);
  BundleFiles files;
  files.grid = out_dir / (fig.name + "_grid.csv");
  files.meta = out_dir / (fig.name + "_meta.json");
  {
    std::ofstream out = open_output(files.grid);
    write_grid_csv(out, grid);
    finish(out, files.grid);
  }

  if (fig.name == "fig1") {
    // Real zeros of the approximation and the complex zeros below the axis.
    RealScanConfig rc;
    rc.grid = {fig.rect.re_min, fig.rect.re_max, 0.01};
    rc.g = opts.xray.g;
    rc.threads = opts.xray.threads;
    std::vector<ZeroRecord> overlay = scan_real_zeros(RealFunction::approx_z, rc);
    CensusConfig cc;
    cc.threads = opts.xray.threads;
    cc.chunk_width = fig.rect.re_max - fig.rect.re_min;
    const Census census = find_negative_im_zeros(fig.rect.re_min, fig.rect.re_max, cc);
    for (const ZeroRecord& z : census.zeros) {
      if (z.position.imag() >= fig.rect.im_min) overlay.push_back(z);
    }
    files.overlay = out_dir / (fig.name + "_zeros.csv");
    std::ofstream out = open_output(files.overlay);
    write_catalog_csv(out, overlay);
    finish(out, files.overlay);
  }

  nlohmann::ordered_json config = {
      {"target_abs_err", opts.xray.g.target_abs_err},
      {"target_rel_err", opts.xray.g.target_rel_err},
      {"max_terms", opts.xray.g.max_terms},
      {"accel_level", opts.xray.g.accel_level},
  };
  const std::string canonical = config.dump() + "|" + fig.name + "|" + format_double(fig.rect.re_min) + "," +
                                format_double(fig.rect.re_max) + "," + format_double(fig.rect.im_min) + "," +
                                format_double(fig.rect.im_max) + "|" + std::to_string(fig.nx) + "x" +
                                std::to_string(fig.ny);
  nlohmann::ordered_json meta = {
      {"name", fig.name},
      {"function", "exp(i theta(t)) G(t)"},
      {"rectangle",
       {{"re_min", fig.rect.re_min}, {"re_max", fig.rect.re_max}, {"im_min", fig.rect.im_min},
        {"im_max", fig.rect.im_max}}},
      {"resolution", {{"nx", fig.nx}, {"ny", fig.ny}}},
      {"layout", "row-major, im_t outer, inclusive endpoints"},
      {"grid_file", files.grid.filename().string()},
      {"overlay_file", files.overlay.empty() ? std::string() : files.overlay.filename().string()},
      {"config", config},
      {"config_hash", fnv1a_hex(canonical)},
      {"version", std::string(version())},
  };
  {
    std::ofstream out = open_output(files.meta);
    out << meta.dump(2) << '\n';
    finish(out, files.meta);
  }
  return files;
}

}  // namespace hardyz

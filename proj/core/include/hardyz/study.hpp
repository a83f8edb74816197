#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hardyz/geval.hpp"
#include "hardyz/specfun.hpp"
#include "hardyz/types.hpp"

namespace hardyz {

std::string_view version() noexcept;

// ---------------------------------------------------------------------------
// Error scan
// ---------------------------------------------------------------------------

struct ScanRow {
  double t = 0.0;
  double z = 0.0;       ///< z_ref(t)
  double approx = 0.0;  ///< approx_z(t)
  double abs_diff = 0.0;
};

struct ErrorScanConfig {
  double samples_per_unit = 20.0;
  GSeriesConfig g;
  ZMethod z_method = ZMethod::automatic;
  /// Lifts the t1 <= 1e4 limit.
  bool allow_beyond = false;
  unsigned threads = 1;
};

/// Rows at t0 + i (t1 - t0) / n, i = 0..n, n = ceil((t1 - t0) samples_per_unit).
std::vector<ScanRow> error_scan(double t0, double t1, const ErrorScanConfig& cfg = {});

void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows);

struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  int window_count = 0;
  double r_squared = 0.0;
};

/// Splits [t_min, t_max] into `windows` windows of equal width in log t,
/// takes the largest abs_diff and the median t of each non-empty window, and
/// fits log(max) = intercept + slope log(median t) by least squares.
DecayFit fit_decay_exponent(const std::vector<ScanRow>& rows, int windows = 20);

// ---------------------------------------------------------------------------
// X-ray grids
// ---------------------------------------------------------------------------

struct Rectangle {
  double re_min = 0.0, re_max = 0.0, im_min = 0.0, im_max = 0.0;
};

/// Samples of e^{i theta(t)} G(t) on an inclusive nx by ny lattice.
/// values[iy * nx + ix] sits at re_min + ix dx, im_min + iy dy.
struct XrayGrid {
  Rectangle rect;
  int nx = 0, ny = 0;
  std::vector<Complex> values;

  Complex point(int ix, int iy) const;
  const Complex& at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * nx + ix]; }
};

struct XrayConfig {
  GSeriesConfig g = default_g();
  unsigned threads = 1;

  /// Relative target on top of the absolute one: far above the axis |G|
  /// reaches 1e20 and an absolute 1e-12 is out of reach.
  static GSeriesConfig default_g() {
    GSeriesConfig g;
    g.target_rel_err = 1e-10;
    return g;
  }
};

/// Requires nx, ny >= 16, re_min >= 20 and a non-empty rectangle.
XrayGrid xray_grid(const Rectangle& rect, int nx, int ny, const XrayConfig& cfg = {});

void write_grid_csv(std::ostream& out, const XrayGrid& grid);

// ---------------------------------------------------------------------------
// Figure bundles
// ---------------------------------------------------------------------------

struct FigureSpec {
  std::string name;
  Rectangle rect;
  int nx = 0, ny = 0;
};

/// fig1, fig2 or fig3; anything else is a parameter error.
FigureSpec figure_spec(std::string_view name);

struct BundleOptions {
  int nx = 0;  ///< 0 keeps the figure's default
  int ny = 0;
  XrayConfig xray;
};

struct BundleFiles {
  std::filesystem::path grid;
  std::filesystem::path meta;
  std::filesystem::path overlay;  ///< empty unless the figure has one
};

/// Writes <name>_grid.csv and <name>_meta.json (and for fig1 the zero
/// overlay <name>_zeros.csv) into out_dir.
BundleFiles figure_data_bundle(std::string_view name, const std::filesystem::path& out_dir,
                               const BundleOptions& opts = {});

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

}  // namespace hardyz

#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hardyz/error.hpp"
#include "hardyz/geval.hpp"
#include "hardyz/types.hpp"

namespace hardyz {

enum class ZeroKind { real_F, real_Z, complex_G };
std::string_view to_string(ZeroKind kind) noexcept;

struct ZeroRecord {
  Complex position{};
  double residual = 0.0;  ///< |F|, |Z| or |G| at the position
  double seed = 0.0;
  int iterations = 0;
  ZeroKind kind = ZeroKind::complex_G;
};

// ---------------------------------------------------------------------------
// Real zeros
// ---------------------------------------------------------------------------

enum class RealFunction { approx_z, z_ref };

struct ScanGrid {
  double t_start = 0.0;
  double t_end = 0.0;
  double step = 0.05;

  /// Requires step > 0, t_end > t_start, and step <= pi / theta'(t_end)
  /// whenever theta'(t_end) > 0.
  void validate() const;
  std::int64_t intervals() const;
  double node(std::int64_t i) const;
};

struct RealScanConfig {
  ScanGrid grid;
  GSeriesConfig g;       ///< used by approx_z
  unsigned threads = 1;
};

/// Sign changes on the grid, refined by a bracketing solver until the
/// bracket is narrower than 1e-10 (or machine resolution).
std::vector<ZeroRecord> scan_real_zeros(RealFunction f, const RealScanConfig& cfg);

// ---------------------------------------------------------------------------
// Argument tracking
// ---------------------------------------------------------------------------

inline constexpr double kDefaultArgStep = 0.05;
inline constexpr double kMinArgStep = 0.05 / 8.0;
/// Node increments above this are resolved by halving the step.
inline constexpr double kMaxNodeIncrement = kPi / 2.0;
inline constexpr double kNodeZeroFloor = 1e-13;

struct ArgSample {
  double t = 0.0;
  double arg = 0.0;  ///< continuous arg G(t)
};

struct ArgTrack {
  std::vector<ArgSample> samples;
  /// Principal increments between coarse nodes before any refinement.
  std::vector<double> coarse_increments;
  double total_variation = 0.0;
  std::int64_t refined_pairs = 0;    ///< coarse steps that needed halving
  std::int64_t unresolved_pairs = 0; ///< still above kMaxNodeIncrement at the minimum step
  std::int64_t perturbed_nodes = 0;
};

struct ArgTrackConfig {
  double step = kDefaultArgStep;
  double min_step = kMinArgStep;
  GSeriesConfig g;
  unsigned threads = 1;
};

/// Unwrapped arg G along [t0, t1] on the nodes t0 + i step (last node t1).
/// Each increment is the principal one, refined by halving while it exceeds
/// kMaxNodeIncrement.
ArgTrack arg_track(double t0, double t1, const ArgTrackConfig& cfg = {});
ArgTrack arg_track(double t0, double t1, double step);

/// Net argument change of G along the segment a -> b in `steps` pieces,
/// each refined like arg_track.
double arg_change(Complex a, Complex b, std::int64_t steps, const GSeriesConfig& cfg = {});

/// Midpoints of consecutive samples whose increment exceeds `threshold` in
/// magnitude.
std::vector<double> detect_jump_seeds(const ArgTrack& track, double threshold = kPi);

/// Centres of local arg descents: samples whose increment is the most
/// negative within +-`radius` samples and below -`floor`.
std::vector<double> detect_descent_seeds(const ArgTrack& track, int radius = 5, double floor = 0.02);

// ---------------------------------------------------------------------------
// Newton
// ---------------------------------------------------------------------------

inline constexpr double kNewtonTol = 1e-12;
inline constexpr double kNewtonAcceptTol = 1e-10;
inline constexpr double kNewtonGuard = 0.5;
inline constexpr double kSingularFloor = 1e-14;
inline constexpr double kSeedOffset = 0.01;

struct NewtonOutcome {
  Complex position{};
  double residual = 0.0;
  int iterations = 0;
};

/// Newton on an analytic function given as fn(z) -> {f(z), f'(z)}.
/// Stops when |f| < tol, or when the step has stalled at rounding level
/// with |f| < kNewtonAcceptTol. The real part may not drift more than
/// `guard` from Re(start).
template <class Fn>
NewtonOutcome newton_solve(Fn&& fn, Complex start, int max_iter = 50, double tol = kNewtonTol,
                           double guard = kNewtonGuard) {
  Complex z = start;
  for (int iter = 0; iter <= max_iter; ++iter) {
    const std::pair<Complex, Complex> fd = fn(z);
    const double residual = std::abs(fd.first);
    if (residual < tol) return {z, residual, iter};
    if (iter == max_iter) break;
    if (std::abs(fd.second) < kSingularFloor) {
      raise(ErrorKind::singular, "newton: derivative vanishes near " + std::to_string(z.real()));
    }
    const Complex step = fd.first / fd.second;
    if (std::abs(step) <= 1e-13 * std::max(1.0, std::abs(z)) && residual < kNewtonAcceptTol) {
      return {z, residual, iter};
    }
    z -= step;
    if (!(std::abs(z.real() - start.real()) <= guard) || !std::isfinite(z.imag())) {
      raise(ErrorKind::divergence, "newton: iterate left the guard window around " + std::to_string(start.real()));
    }
  }
  raise(ErrorKind::divergence, "newton: no convergence in " + std::to_string(max_iter) + " iterations from " +
                                   std::to_string(start.real()));
}

/// Newton on G from seed - 0.01 i.
ZeroRecord newton_complex(double seed, int max_iter = 50, const GSeriesConfig& cfg = {});

// ---------------------------------------------------------------------------
// Census of zeros below the real axis
// ---------------------------------------------------------------------------

struct CensusConfig {
  double step = kDefaultArgStep;
  double min_step = kMinArgStep;
  double jump_threshold = kPi / 2.0;
  double chunk_width = 50.0;
  /// Bottom edge of the boxes used for the argument-principle cross-check.
  double box_depth = 0.5;
  bool verify_counts = true;
  int max_iter = 50;
  GSeriesConfig g;
  unsigned threads = 1;
};

enum class SeedStatus { accepted, duplicate, upper_half, out_of_range, failed };
std::string_view to_string(SeedStatus status) noexcept;

struct SeedEvidence {
  double seed = 0.0;
  std::string source;  ///< "jump", "descent" or "box"
  SeedStatus status = SeedStatus::failed;
  Complex position{};
  double residual = 0.0;
  int iterations = 0;
  std::string message;
};

/// Argument-principle count of zeros in (a, b) x (-depth, 0) next to the
/// number of catalogued zeros in that box.
struct ChunkCount {
  double t_begin = 0.0;
  double t_end = 0.0;
  double winding = 0.0;  ///< raw winding number before rounding
  /// The same with unrefined increments along the real axis.
  double coarse_winding = 0.0;
  int expected = 0;
  int found = 0;
};

struct Census {
  std::vector<ZeroRecord> zeros;
  std::vector<SeedEvidence> evidence;
  std::vector<ChunkCount> chunks;
  std::int64_t track_samples = 0;
  std::int64_t refined_pairs = 0;
  std::int64_t unresolved_pairs = 0;
  /// Zeros counted by summing unrefined principal increments of the coarse
  /// track; this is what plain grid sampling sees.
  int coarse_winding_count = 0;
};

Census find_negative_im_zeros(double t0, double t1, const CensusConfig& cfg = {});

/// Sorts by (Re, Im) and merges records closer than `tol`, keeping the
/// lexicographically smaller position.
std::vector<ZeroRecord> dedupe_zeros(std::vector<ZeroRecord> zeros, double tol = 1e-6);

// ---------------------------------------------------------------------------
// Pairing
// ---------------------------------------------------------------------------

struct ZeroPair {
  std::size_t a_index = 0;
  std::size_t b_index = 0;
  double distance = 0.0;
};

struct PairingReport {
  std::vector<ZeroPair> pairs;
  std::vector<std::size_t> unmatched_a;
  std::vector<std::size_t> unmatched_b;
  double max_distance = 0.0;
  double mean_distance = 0.0;
};

/// Greedy matching: candidate pairs within tol taken in order of increasing
/// distance, each record used at most once.
PairingReport pair_zeros(const std::vector<ZeroRecord>& a, const std::vector<ZeroRecord>& b, double tol);

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

/// CSV with header position_re,position_im,residual,seed,iterations,kind.
void write_catalog_csv(std::ostream& out, const std::vector<ZeroRecord>& zeros);
/// JSON array of flat records with the same field names.
void write_catalog_json(std::ostream& out, const std::vector<ZeroRecord>& zeros);
void write_evidence_csv(std::ostream& out, const std::vector<SeedEvidence>& evidence);
void write_chunk_counts_csv(std::ostream& out, const std::vector<ChunkCount>& chunks);

std::vector<ZeroRecord> read_catalog_csv(std::istream& in);

}  // namespace hardyz

#include "hardyz/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>
#include "json.hpp"

#include "hardyz/format.hpp"
#include "hardyz/parallel.hpp"
#include "hardyz/specfun.hpp"

namespace hardyz {

std::string_view to_string(ZeroKind kind) noexcept {
  switch (kind) {
    case ZeroKind::real_F: return "real_F";
    case ZeroKind::real_Z: return "real_Z";
    case ZeroKind::complex_G: return "complex_G";
  }
  return "complex_G";
}

std::string_view to_string(SeedStatus status) noexcept {
  switch (status) {
    case SeedStatus::accepted: return "accepted";
    case SeedStatus::duplicate: return "duplicate";
    case SeedStatus::upper_half: return "upper_half";
    case SeedStatus::out_of_range: return "out_of_range";
    case SeedStatus::failed: return "failed";
  }
  return "failed";
}

// ---------------------------------------------------------------------------
// Real zeros
// ---------------------------------------------------------------------------

void ScanGrid::validate() const {
  if (!std::isfinite(t_start) || !std::isfinite(t_end) || !(t_end > t_start)) {
    raise(ErrorKind::parameter, "ScanGrid: requires t_end > t_start");
  }
  if (!(step > 0.0)) raise(ErrorKind::parameter, "ScanGrid: step must be > 0");
  const double slope = theta_prime(t_end).value;
  if (slope > 0.0 && step > kPi / slope) {
    raise(ErrorKind::parameter, "ScanGrid: step exceeds pi / theta'(t_end) = " + format_double(kPi / slope));
  }
}

std::int64_t ScanGrid::intervals() const {
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil((t_end - t_start) / step - 1e-9)));
}

double ScanGrid::node(std::int64_t i) const {
  return i >= intervals() ? t_end : t_start + static_cast<double>(i) * step;
}

namespace {

double real_value(RealFunction f, double t, const GSeriesConfig& g) {
  return f == RealFunction::approx_z ? approx_z(t, g) : z_ref(t).value.real();
}

}  // namespace

std::vector<ZeroRecord> scan_real_zeros(RealFunction f, const RealScanConfig& cfg) {
  cfg.grid.validate();
  const Executor ex(cfg.threads);
  const std::int64_t n = cfg.grid.intervals();
  const auto values = ex.map(static_cast<std::size_t>(n + 1),
                             [&](std::size_t i) { return real_value(f, cfg.grid.node(static_cast<std::int64_t>(i)), cfg.g); });

  struct Bracket {
    double a, b, fa, fb;
  };
  std::vector<Bracket> brackets;
  for (std::int64_t i = 0; i <= n; ++i) {
    const double v = values[static_cast<std::size_t>(i)];
    const double t = cfg.grid.node(i);
    if (v == 0.0) {
      brackets.push_back({t, t, 0.0, 0.0});
      continue;
    }
    if (i < n) {
      const double w = values[static_cast<std::size_t>(i + 1)];
      if (w != 0.0 && (v < 0.0) != (w < 0.0)) brackets.push_back({t, cfg.grid.node(i + 1), v, w});
    }
  }

  const ZeroKind kind = f == RealFunction::approx_z ? ZeroKind::real_F : ZeroKind::real_Z;
  auto records = ex.map(brackets.size(), [&](std::size_t k) {
    const Bracket& br = brackets[k];
    ZeroRecord rec;
    rec.kind = kind;
    rec.seed = 0.5 * (br.a + br.b);
    if (br.a == br.b) {
      rec.position = br.a;
      return rec;
    }
    auto fn = [&](double t) { return real_value(f, t, cfg.g); };
    auto tol = [](double lo, double hi) { return std::abs(hi - lo) <= std::max(1e-12, 8.0 * kEps * std::abs(lo)); };
    std::uintmax_t iters = 200;
    const auto [lo, hi] = boost::math::tools::toms748_solve(fn, br.a, br.b, br.fa, br.fb, tol, iters);
    const double mid = 0.5 * (lo + hi);
    rec.position = mid;
    rec.residual = std::abs(fn(mid));
    rec.iterations = static_cast<int>(iters);
    return rec;
  });
  std::sort(records.begin(), records.end(),
            [](const ZeroRecord& x, const ZeroRecord& y) { return x.position.real() < y.position.real(); });
  return records;
}

// ---------------------------------------------------------------------------
// Argument tracking
// ---------------------------------------------------------------------------

namespace {

struct NodeValue {
  Complex point;
  Complex value;
  bool perturbed = false;
};

// G at `point`; a node that lands on a zero is nudged by `nudge` once.
template <class Path>
NodeValue node_value(const Path& path, double u, double nudge, const GSeriesConfig& cfg) {
  NodeValue out{path(u), {}, false};
  out.value = g_auto(out.point, cfg).value;
  if (std::abs(out.value) >= kNodeZeroFloor) return out;
  out.point = path(u + nudge);
  out.value = g_auto(out.point, cfg).value;
  out.perturbed = true;
  if (std::abs(out.value) < kNodeZeroFloor) {
    raise(ErrorKind::singular, "arg_track: |G| < 1e-13 at node " + format_double(out.point.real()) + " even after perturbation");
  }
  return out;
}

struct Increment {
  double value = 0.0;
  bool refined = false;
  bool unresolved = false;
};

template <class Path>
void refine(const Path& path, double u0, Complex g0, double u1, Complex g1, double min_width, const GSeriesConfig& cfg,
            Increment& acc) {
  const double inc = std::arg(g1 / g0);
  if (std::abs(inc) <= kMaxNodeIncrement) {
    acc.value += inc;
    return;
  }
  if (u1 - u0 <= min_width * (1.0 + 1e-9)) {
    acc.value += inc;
    acc.unresolved = true;
    return;
  }
  acc.refined = true;
  const double um = 0.5 * (u0 + u1);
  const NodeValue mid = node_value(path, um, (u1 - u0) / 7.0, cfg);
  refine(path, u0, g0, um, mid.value, min_width, cfg, acc);
  refine(path, um, mid.value, u1, g1, min_width, cfg, acc);
}

}  // namespace

ArgTrack arg_track(double t0, double t1, const ArgTrackConfig& cfg) {
  if (!(t0 > 0.0) || !(t1 > t0) || !std::isfinite(t1)) raise(ErrorKind::parameter, "arg_track: requires 0 < t0 < t1");
  if (!(cfg.step > 0.0) || !(cfg.min_step > 0.0)) raise(ErrorKind::parameter, "arg_track: steps must be > 0");
  const ScanGrid grid{t0, t1, cfg.step};
  const std::int64_t n = grid.intervals();
  auto path = [](double u) { return Complex(u, 0.0); };
  const Executor ex(cfg.threads);
  const auto nodes = ex.map(static_cast<std::size_t>(n + 1), [&](std::size_t i) {
    return node_value(path, grid.node(static_cast<std::int64_t>(i)), cfg.step / 7.0, cfg.g);
  });
  const auto incs = ex.map(static_cast<std::size_t>(n), [&](std::size_t i) {
    Increment acc;
    refine(path, nodes[i].point.real(), nodes[i].value, nodes[i + 1].point.real(), nodes[i + 1].value, cfg.min_step, cfg.g,
           acc);
    return acc;
  });

  ArgTrack track;
  track.samples.reserve(nodes.size());
  track.coarse_increments.reserve(incs.size());
  double arg = std::arg(nodes[0].value);
  track.samples.push_back({nodes[0].point.real(), arg});
  for (std::size_t i = 0; i < incs.size(); ++i) {
    arg += incs[i].value;
    track.samples.push_back({nodes[i + 1].point.real(), arg});
    track.coarse_increments.push_back(std::arg(nodes[i + 1].value / nodes[i].value));
    track.total_variation += std::abs(incs[i].value);
    track.refined_pairs += incs[i].refined ? 1 : 0;
    track.unresolved_pairs += incs[i].unresolved ? 1 : 0;
  }
  for (const NodeValue& node : nodes) track.perturbed_nodes += node.perturbed ? 1 : 0;
  return track;
}

ArgTrack arg_track(double t0, double t1, double step) {
  ArgTrackConfig cfg;
  cfg.step = step;
  cfg.min_step = std::min(cfg.min_step, step / 8.0);
  return arg_track(t0, t1, cfg);
}

double arg_change(Complex a, Complex b, std::int64_t steps, const GSeriesConfig& cfg) {
  if (steps < 1) raise(ErrorKind::parameter, "arg_change: steps must be >= 1");
  auto path = [a, b](double u) { return a + u * (b - a); };
  const double h = 1.0 / static_cast<double>(steps);
  double total = 0.0;
  NodeValue prev = node_value(path, 0.0, h / 7.0, cfg);
  for (std::int64_t i = 1; i <= steps; ++i) {
    const double u = i == steps ? 1.0 : static_cast<double>(i) * h;
    const NodeValue cur = node_value(path, u, -h / 7.0, cfg);
    Increment acc;
    refine(path, u - h, prev.value, u, cur.value, h / 8.0, cfg, acc);
    total += acc.value;
    prev = cur;
  }
  return total;
}

std::vector<double> detect_jump_seeds(const ArgTrack& track, double threshold) {
  std::vector<double> seeds;
  for (std::size_t i = 0; i + 1 < track.samples.size(); ++i) {
    const double inc = track.samples[i + 1].arg - track.samples[i].arg;
    if (std::abs(inc) > threshold) seeds.push_back(0.5 * (track.samples[i].t + track.samples[i + 1].t));
  }
  return seeds;
}

std::vector<double> detect_descent_seeds(const ArgTrack& track, int radius, double floor) {
  std::vector<double> seeds;
  const std::size_t n = track.samples.size() < 2 ? 0 : track.samples.size() - 1;
  std::vector<double> inc(n);
  for (std::size_t i = 0; i < n; ++i) inc[i] = track.samples[i + 1].arg - track.samples[i].arg;
  const auto r = static_cast<std::size_t>(std::max(0, radius));
  for (std::size_t i = 0; i < n; ++i) {
    if (!(inc[i] < -floor)) continue;
    const std::size_t lo = i >= r ? i - r : 0;
    const std::size_t hi = std::min(n - 1, i + r);
    bool is_min = true;
    for (std::size_t j = lo; j <= hi && is_min; ++j) {
      // ties go to the earliest sample
      if (inc[j] < inc[i] || (inc[j] == inc[i] && j < i)) is_min = false;
    }
    if (is_min) seeds.push_back(0.5 * (track.samples[i].t + track.samples[i + 1].t));
  }
  return seeds;
}

// ---------------------------------------------------------------------------
// Newton
// ---------------------------------------------------------------------------

namespace {

ZeroRecord newton_from(Complex start, double seed, int max_iter, const GSeriesConfig& cfg) {
  auto fn = [&](Complex z) {
    const GWithDerivative gd = g_auto_with_derivative(z, cfg);
    return std::pair<Complex, Complex>{gd.value.value, gd.derivative.value};
  };
  const NewtonOutcome out = newton_solve(fn, start, max_iter);
  ZeroRecord rec;
  rec.position = out.position;
  rec.residual = out.residual;
  rec.iterations = out.iterations;
  rec.seed = seed;
  rec.kind = ZeroKind::complex_G;
  return rec;
}

}  // namespace

ZeroRecord newton_complex(double seed, int max_iter, const GSeriesConfig& cfg) {
  if (!std::isfinite(seed)) raise(ErrorKind::parameter, "newton_complex: non-finite seed");
  if (max_iter < 1) raise(ErrorKind::parameter, "newton_complex: max_iter must be >= 1");
  return newton_from(Complex(seed, -kSeedOffset), seed, max_iter, cfg);
}

// ---------------------------------------------------------------------------
// Census
// ---------------------------------------------------------------------------

std::vector<ZeroRecord> dedupe_zeros(std::vector<ZeroRecord> zeros, double tol) {
  auto lex = [](const ZeroRecord& a, const ZeroRecord& b) {
    if (a.position.real() != b.position.real()) return a.position.real() < b.position.real();
    return a.position.imag() < b.position.imag();
  };
  std::stable_sort(zeros.begin(), zeros.end(), lex);
  std::vector<ZeroRecord> out;
  for (const ZeroRecord& z : zeros) {
    bool dup = false;
    // Records within tol are adjacent up to a tol-wide window in Re.
    for (auto it = out.rbegin(); it != out.rend() && z.position.real() - it->position.real() <= tol; ++it) {
      if (std::abs(z.position - it->position) <= tol) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(z);
  }
  return out;
}

namespace {

struct ChunkResult {
  std::vector<SeedEvidence> evidence;
  std::vector<ZeroRecord> zeros;
  ChunkCount count;
  double coarse_winding = 0.0;
  std::int64_t samples = 0, refined = 0, unresolved = 0;
};

bool in_box(const ZeroRecord& z, double a, double b, double depth) {
  return z.position.real() >= a && z.position.real() < b && z.position.imag() < 0.0 && z.position.imag() > -depth;
}

void run_seed(Complex start, double seed, const char* source, double t0, double t1, const CensusConfig& cfg,
              ChunkResult& out) {
  SeedEvidence ev;
  ev.seed = seed;
  ev.source = source;
  try {
    const ZeroRecord rec = newton_from(start, seed, cfg.max_iter, cfg.g);
    ev.position = rec.position;
    ev.residual = rec.residual;
    ev.iterations = rec.iterations;
    if (!(rec.position.imag() < 0.0)) {
      ev.status = SeedStatus::upper_half;
    } else if (rec.position.real() < t0 || rec.position.real() > t1) {
      ev.status = SeedStatus::out_of_range;
    } else {
      ev.status = SeedStatus::accepted;
      out.zeros.push_back(rec);
    }
  } catch (const Error& e) {
    ev.status = SeedStatus::failed;
    ev.message = e.what();
  }
  out.evidence.push_back(std::move(ev));
}

int count_in_box(const std::vector<ZeroRecord>& zeros, double a, double b, double depth) {
  const auto unique = dedupe_zeros(zeros);
  return static_cast<int>(std::count_if(unique.begin(), unique.end(),
                                        [&](const ZeroRecord& z) { return in_box(z, a, b, depth); }));
}

ChunkResult census_chunk(const ScanGrid& grid, std::int64_t first, std::int64_t last, double t0, double t1,
                         const CensusConfig& cfg) {
  ChunkResult out;
  const std::int64_t n = grid.intervals();
  const std::int64_t track_last = std::min(n, last + 1);  // one step of overlap
  ArgTrackConfig tc;
  tc.step = cfg.step;
  tc.min_step = cfg.min_step;
  tc.g = cfg.g;
  const double a = grid.node(first);
  const double b = grid.node(last);
  const double b_track = grid.node(track_last);
  const ArgTrack track = arg_track(a, b_track, tc);
  out.samples = static_cast<std::int64_t>(track.samples.size());
  out.refined = track.refined_pairs;
  out.unresolved = track.unresolved_pairs;

  const std::vector<double> jumps = detect_jump_seeds(track, cfg.jump_threshold);
  const std::vector<double> descents = detect_descent_seeds(track);
  std::vector<std::pair<double, const char*>> seeds;
  for (double s : jumps) seeds.emplace_back(s, "jump");
  for (double s : descents) {
    const bool known = std::any_of(jumps.begin(), jumps.end(), [&](double j) { return std::abs(j - s) < 1e-12; });
    if (!known) seeds.emplace_back(s, "descent");
  }
  std::stable_sort(seeds.begin(), seeds.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (const auto& [s, source] : seeds) run_seed(Complex(s, -kSeedOffset), s, source, t0, t1, cfg, out);

  out.count.t_begin = a;
  out.count.t_end = b;
  if (cfg.verify_counts) {
    const std::int64_t steps = last - first;
    const auto depth_steps = std::max<std::int64_t>(4, static_cast<std::int64_t>(std::ceil(cfg.box_depth / cfg.step)));
    const Complex down(0.0, -cfg.box_depth);
    const double bottom = arg_change(a + down, b + down, steps, cfg.g);
    const double right = arg_change(b + down, Complex(b, 0.0), depth_steps, cfg.g);
    const double left = arg_change(a + down, Complex(a, 0.0), depth_steps, cfg.g);
    double top = 0.0, coarse_top = 0.0;
    for (std::int64_t i = 0; i < steps; ++i) {
      top += track.samples[static_cast<std::size_t>(i + 1)].arg - track.samples[static_cast<std::size_t>(i)].arg;
      coarse_top += track.coarse_increments[static_cast<std::size_t>(i)];
    }
    out.count.winding = (bottom + right - top - left) / kTwoPi;
    out.count.expected = static_cast<int>(std::lround(out.count.winding));
    out.coarse_winding = (bottom + right - coarse_top - left) / kTwoPi;
    out.count.coarse_winding = out.coarse_winding;

    // Boxes with fewer zeros than the winding number get a grid of extra
    // Newton starts.
    out.count.found = count_in_box(out.zeros, a, b, cfg.box_depth);
    const double depths[] = {0.05, 0.15, 0.3};
    for (double depth : depths) {
      if (out.count.found >= out.count.expected || depth >= cfg.box_depth) break;
      for (double s = a + 0.125; s < b && out.count.found < out.count.expected; s += 0.25) {
        run_seed(Complex(s, -depth), s, "box", t0, t1, cfg, out);
        out.count.found = count_in_box(out.zeros, a, b, cfg.box_depth);
      }
    }
  }
  return out;
}

}  // namespace

Census find_negative_im_zeros(double t0, double t1, const CensusConfig& cfg) {
  if (!(t0 >= 0.0) || !(t1 > t0)) raise(ErrorKind::parameter, "find_negative_im_zeros: requires 0 <= t0 < t1");
  if (t1 > 1e4) raise(ErrorKind::domain, "find_negative_im_zeros: t1 must not exceed 1e4");
  if (!(cfg.step > 0.0) || !(cfg.chunk_width >= cfg.step) || !(cfg.box_depth > 0.0)) {
    raise(ErrorKind::parameter, "find_negative_im_zeros: invalid step, chunk width or box depth");
  }
  // G(0) = 0; the track starts one step out.
  const double start = t0 > 0.0 ? t0 : cfg.step;
  if (!(t1 > start)) raise(ErrorKind::parameter, "find_negative_im_zeros: range shorter than one step");
  const ScanGrid grid{start, t1, cfg.step};
  const std::int64_t n = grid.intervals();
  const auto per_chunk = std::max<std::int64_t>(1, std::llround(cfg.chunk_width / cfg.step));
  const std::int64_t chunks = (n + per_chunk - 1) / per_chunk;

  const Executor ex(cfg.threads);
  const auto results = ex.map(static_cast<std::size_t>(chunks), [&](std::size_t c) {
    const auto first = static_cast<std::int64_t>(c) * per_chunk;
    const std::int64_t last = std::min(n, first + per_chunk);
    return census_chunk(grid, first, last, t0, t1, cfg);
  });

  Census census;
  std::vector<ZeroRecord> all;
  double coarse = 0.0;
  for (const ChunkResult& r : results) {
    census.evidence.insert(census.evidence.end(), r.evidence.begin(), r.evidence.end());
    all.insert(all.end(), r.zeros.begin(), r.zeros.end());
    census.track_samples += r.samples;
    census.refined_pairs += r.refined;
    census.unresolved_pairs += r.unresolved;
    coarse += r.coarse_winding;
    if (cfg.verify_counts) census.chunks.push_back(r.count);
  }
  census.zeros = dedupe_zeros(all);
  census.coarse_winding_count = static_cast<int>(std::lround(coarse));

  // Mark accepted seeds whose zero went to an earlier record.
  for (SeedEvidence& ev : census.evidence) {
    if (ev.status != SeedStatus::accepted) continue;
    const auto it = std::find_if(census.zeros.begin(), census.zeros.end(), [&](const ZeroRecord& z) {
      return std::abs(z.position - ev.position) <= 1e-6;
    });
    if (it != census.zeros.end() && it->position != ev.position) ev.status = SeedStatus::duplicate;
  }
  // Box counts are recomputed against the merged catalogue.
  for (ChunkCount& cc : census.chunks) {
    cc.found = static_cast<int>(std::count_if(census.zeros.begin(), census.zeros.end(), [&](const ZeroRecord& z) {
      return in_box(z, cc.t_begin, cc.t_end, cfg.box_depth);
    }));
  }
  return census;
}

// ---------------------------------------------------------------------------
// Pairing
// ---------------------------------------------------------------------------

PairingReport pair_zeros(const std::vector<ZeroRecord>& a, const std::vector<ZeroRecord>& b, double tol) {
  if (!(tol >= 0.0)) raise(ErrorKind::parameter, "pair_zeros: tol must be >= 0");
  std::vector<ZeroPair> candidates;
  std::size_t start = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double re = a[i].position.real();
    while (start < b.size() && b[start].position.real() < re - tol) ++start;
    for (std::size_t j = start; j < b.size() && b[j].position.real() <= re + tol; ++j) {
      const double d = std::abs(a[i].position - b[j].position);
      if (d <= tol) candidates.push_back({i, j, d});
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const ZeroPair& x, const ZeroPair& y) {
    if (x.distance != y.distance) return x.distance < y.distance;
    if (x.a_index != y.a_index) return x.a_index < y.a_index;
    return x.b_index < y.b_index;
  });
  std::vector<bool> used_a(a.size(), false), used_b(b.size(), false);
  PairingReport report;
  for (const ZeroPair& p : candidates) {
    if (used_a[p.a_index] || used_b[p.b_index]) continue;
    used_a[p.a_index] = used_b[p.b_index] = true;
    report.pairs.push_back(p);
  }
  std::sort(report.pairs.begin(), report.pairs.end(),
            [](const ZeroPair& x, const ZeroPair& y) { return x.a_index < y.a_index; });
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!used_a[i]) report.unmatched_a.push_back(i);
  }
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (!used_b[j]) report.unmatched_b.push_back(j);
  }
  double sum = 0.0;
  for (const ZeroPair& p : report.pairs) {
    report.max_distance = std::max(report.max_distance, p.distance);
    sum += p.distance;
  }
  report.mean_distance = report.pairs.empty() ? 0.0 : sum / static_cast<double>(report.pairs.size());
  return report;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

void write_catalog_csv(std::ostream& out, const std::vector<ZeroRecord>& zeros) {
  out << "position_re,position_im,residual,seed,iterations,kind\n";
  for (const ZeroRecord& z : zeros) {
    out << format_double(z.position.real()) << ',' << format_double(z.position.imag()) << ','
        << format_double(z.residual) << ',' << format_double(z.seed) << ',' << z.iterations << ',' << to_string(z.kind)
        << '\n';
  }
}

void write_catalog_json(std::ostream& out, const std::vector<ZeroRecord>& zeros) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const ZeroRecord& z : zeros) {
    arr.push_back({{"position_re", z.position.real()},
                   {"position_im", z.position.imag()},
                   {"residual", z.residual},
                   {"seed", z.seed},
                   {"iterations", z.iterations},
                   {"kind", std::string(to_string(z.kind))}});
  }
  out << arr.dump(2) << '\n';
}

void write_evidence_csv(std::ostream& out, const std::vector<SeedEvidence>& evidence) {
  out << "seed,source,status,position_re,position_im,residual,iterations,message\n";
  for (const SeedEvidence& e : evidence) {
    std::string msg = e.message;
    std::replace(msg.begin(), msg.end(), ',', ';');
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    out << format_double(e.seed) << ',' << e.source << ',' << to_string(e.status) << ','
        << format_double(e.position.real()) << ',' << format_double(e.position.imag()) << ','
        << format_double(e.residual) << ',' << e.iterations << ',' << msg << '\n';
  }
}

void write_chunk_counts_csv(std::ostream& out, const std::vector<ChunkCount>& chunks) {
  out << "t_begin,t_end,winding,coarse_winding,expected,found\n";
  for (const ChunkCount& c : chunks) {
    out << format_double(c.t_begin) << ',' << format_double(c.t_end) << ',' << format_double(c.winding) << ','
        << format_double(c.coarse_winding) << ',' << c.expected << ',' << c.found << '\n';
  }
}

std::vector<ZeroRecord> read_catalog_csv(std::istream& in) {
  std::vector<ZeroRecord> out;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line.rfind("position_re", 0) == 0) continue;
    }
    std::stringstream ss(line);
    std::string field[6];
    for (auto& f : field) std::getline(ss, f, ',');
    ZeroRecord z;
    try {
      z.position = Complex(std::stod(field[0]), std::stod(field[1]));
      z.residual = std::stod(field[2]);
      z.seed = std::stod(field[3]);
      z.iterations = std::stoi(field[4]);
    } catch (const std::exception&) {
      raise(ErrorKind::io, "read_catalog_csv: malformed line: " + line);
    }
    if (field[5] == "real_F") {
      z.kind = ZeroKind::real_F;
    } else if (field[5] == "real_Z") {
      z.kind = ZeroKind::real_Z;
    } else {
      z.kind = ZeroKind::complex_G;
    }
    out.push_back(z);
  }
  return out;
}

}  // namespace hardyz

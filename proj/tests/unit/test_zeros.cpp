#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hardyz/error.hpp"
#include "hardyz/zeros.hpp"

using namespace hardyz;

namespace {

const Complex kRho1(415.013314385218735, -0.002716405784863);
const Complex kRho2(528.448233327308799, -0.035456627879970);
const Complex kRho3(540.651326093714601, -0.023355813849291);

ZeroRecord record(double re, double im, ZeroKind kind = ZeroKind::complex_G) {
  ZeroRecord z;
  z.position = {re, im};
  z.kind = kind;
  return z;
}

}  // namespace

TEST(ScanGrid, Validation) {
  EXPECT_NO_THROW((ScanGrid{10.0, 20.0, 0.05}.validate()));
  EXPECT_THROW((ScanGrid{10.0, 20.0, 0.0}.validate()), Error);
  EXPECT_THROW((ScanGrid{20.0, 10.0, 0.05}.validate()), Error);
  // theta'(t) grows like log(t / 2 pi) / 2; a 2.0 step oversamples nothing.
  EXPECT_THROW((ScanGrid{100.0, 1000.0, 2.0}.validate()), Error);
  const ScanGrid g{1.0, 2.0, 0.3};
  EXPECT_EQ(g.intervals(), 4);
  EXPECT_EQ(g.node(g.intervals()), 2.0);
}

TEST(RealZeros, ZetaZerosInBracket) {
  RealScanConfig rc;
  rc.grid = {14.0, 15.0, 0.05};
  auto zs = scan_real_zeros(RealFunction::z_ref, rc);
  ASSERT_EQ(zs.size(), 1u);
  EXPECT_NEAR(zs[0].position.real(), 14.134725141734694, 1e-10);
  EXPECT_EQ(zs[0].kind, ZeroKind::real_Z);

  rc.grid = {10.0, 50.0, 0.05};
  zs = scan_real_zeros(RealFunction::z_ref, rc);
  ASSERT_EQ(zs.size(), 10u);
  EXPECT_NEAR(zs[1].position.real(), 21.022039638771555, 1e-10);
  EXPECT_NEAR(zs[9].position.real(), 49.773832477672302, 1e-10);
}

TEST(RealZeros, ApproxZeros) {
  RealScanConfig rc;
  rc.grid = {1000.0, 1040.0, 0.01};
  const auto zs = scan_real_zeros(RealFunction::approx_z, rc);
  EXPECT_EQ(zs.size(), 32u);
  for (const ZeroRecord& z : zs) {
    EXPECT_EQ(z.kind, ZeroKind::real_F);
    EXPECT_LT(std::abs(approx_z(z.position.real())), 1e-8);
  }
}

TEST(ArgTrack, SmoothAwayFromZeros) {
  const ArgTrack tr = arg_track(100.0, 110.0, 0.05);
  ASSERT_EQ(tr.samples.size(), 201u);
  EXPECT_EQ(tr.samples.front().t, 100.0);
  EXPECT_EQ(tr.samples.back().t, 110.0);
  EXPECT_EQ(tr.unresolved_pairs, 0);
  EXPECT_NEAR(tr.samples.front().arg, std::arg(g_auto(100.0).value), 1e-12);
  for (std::size_t i = 1; i < tr.samples.size(); ++i) {
    EXPECT_LE(std::abs(tr.samples[i].arg - tr.samples[i - 1].arg), kMaxNodeIncrement + 1e-12);
  }
}

TEST(ArgTrack, JumpAtShallowZero) {
  const ArgTrack tr = arg_track(414.0, 416.0, 0.05);
  const auto jumps = detect_jump_seeds(tr, kPi / 2);
  ASSERT_FALSE(jumps.empty());
  EXPECT_NEAR(jumps.front(), kRho1.real(), 0.05);
}

TEST(ArgTrack, DescentAtDeeperZero) {
  const ArgTrack tr = arg_track(525.0, 532.0, 0.05);
  const auto seeds = detect_descent_seeds(tr);
  const bool near = std::any_of(seeds.begin(), seeds.end(), [](double s) { return std::abs(s - kRho2.real()) < 0.1; });
  EXPECT_TRUE(near);
}

TEST(ArgChange, WindingAroundZero) {
  // Counter-clockwise box around rho1.
  const Complex a(414.5, -0.1), b(415.5, -0.1), c(415.5, 0.1), d(414.5, 0.1);
  const double w = arg_change(a, b, 40) + arg_change(b, c, 8) + arg_change(c, d, 40) + arg_change(d, a, 8);
  EXPECT_NEAR(w / kTwoPi, 1.0, 1e-9);
}

TEST(Newton, PublishedZeros) {
  for (Complex rho : {kRho1, kRho2, kRho3}) {
    const ZeroRecord z = newton_complex(rho.real() + 0.02);
    EXPECT_LT(std::abs(z.position.real() - rho.real()), 1e-9) << rho;
    EXPECT_LT(std::abs(z.position.imag() - rho.imag()), 1e-11) << rho;
    EXPECT_LT(z.residual, 1e-10);
  }
}

TEST(Newton, GenericSolver) {
  auto f = [](Complex z) { return std::pair<Complex, Complex>{z * z + 1.0, 2.0 * z}; };
  const NewtonOutcome o = newton_solve(f, Complex(0.3, -0.8));
  EXPECT_LT(std::abs(o.position - Complex(0.0, -1.0)), 1e-12);
  auto flat = [](Complex) { return std::pair<Complex, Complex>{1.0, 0.0}; };
  EXPECT_THROW(newton_solve(flat, Complex(1.0, 0.0)), Error);
  auto drift = [](Complex z) { return std::pair<Complex, Complex>{std::exp(z), std::exp(z)}; };
  EXPECT_THROW(newton_solve(drift, Complex(0.0, 0.0)), Error);
}

TEST(Census, FirstThousand) {
  const Census c = find_negative_im_zeros(0.0, 1000.0);
  ASSERT_EQ(c.zeros.size(), 12u);
  EXPECT_LT(std::abs(c.zeros[0].position - kRho1), 1e-9);
  EXPECT_LT(std::abs(c.zeros[1].position - kRho2), 1e-9);
  EXPECT_LT(std::abs(c.zeros[2].position - kRho3), 1e-9);
  EXPECT_EQ(c.coarse_winding_count, 12);
  for (const ChunkCount& cc : c.chunks) EXPECT_EQ(cc.expected, cc.found) << cc.t_begin;
  for (const ZeroRecord& z : c.zeros) {
    EXPECT_LT(z.position.imag(), 0.0);
    EXPECT_LT(z.residual, 1e-10);
  }
  EXPECT_FALSE(c.evidence.empty());
}

TEST(Census, ThreadCountDoesNotMatter) {
  CensusConfig one, four;
  four.threads = 4;
  const Census a = find_negative_im_zeros(400.0, 700.0, one);
  const Census b = find_negative_im_zeros(400.0, 700.0, four);
  std::ostringstream sa, sb;
  write_catalog_csv(sa, a.zeros);
  write_catalog_csv(sb, b.zeros);
  write_evidence_csv(sa, a.evidence);
  write_evidence_csv(sb, b.evidence);
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(Census, Validation) {
  EXPECT_THROW(find_negative_im_zeros(10.0, 5.0), Error);
  EXPECT_THROW(find_negative_im_zeros(0.0, 2e4), Error);
}

TEST(Dedupe, MergesNearRecords) {
  std::vector<ZeroRecord> zs = {record(2.0, -0.1), record(1.0, -0.2), record(1.0 + 1e-8, -0.2), record(2.0, -0.1)};
  const auto out = dedupe_zeros(zs);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].position, Complex(1.0, -0.2));
  EXPECT_EQ(out[1].position, Complex(2.0, -0.1));
}

TEST(Pairing, Greedy) {
  const std::vector<ZeroRecord> a = {record(1.0, 0.0), record(2.0, 0.0), record(5.0, 0.0)};
  const std::vector<ZeroRecord> b = {record(1.01, 0.0), record(1.98, 0.0), record(9.0, 0.0)};
  const PairingReport r = pair_zeros(a, b, 0.05);
  ASSERT_EQ(r.pairs.size(), 2u);
  EXPECT_EQ(r.unmatched_a, std::vector<std::size_t>{2});
  EXPECT_EQ(r.unmatched_b, std::vector<std::size_t>{2});
  EXPECT_NEAR(r.max_distance, 0.02, 1e-12);
  EXPECT_NEAR(r.mean_distance, 0.015, 1e-12);
}

TEST(Pairing, EachRecordUsedOnce) {
  const std::vector<ZeroRecord> a = {record(1.0, 0.0)};
  const std::vector<ZeroRecord> b = {record(1.01, 0.0), record(0.995, 0.0)};
  const PairingReport r = pair_zeros(a, b, 0.05);
  ASSERT_EQ(r.pairs.size(), 1u);
  EXPECT_EQ(r.pairs[0].b_index, 1u);
  EXPECT_EQ(r.unmatched_b, std::vector<std::size_t>{0});
}

TEST(Catalog, CsvRoundTrip) {
  std::vector<ZeroRecord> zs = {record(415.01331438521873, -0.0027164057848626257), record(14.1347, 0.0, ZeroKind::real_Z)};
  zs[0].residual = 3.1e-14;
  zs[0].seed = 415.025;
  zs[0].iterations = 3;
  std::ostringstream out;
  write_catalog_csv(out, zs);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "position_re,position_im,residual,seed,iterations,kind");
  std::istringstream in(out.str());
  const auto back = read_catalog_csv(in);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].position, zs[0].position);
  EXPECT_EQ(back[0].residual, zs[0].residual);
  EXPECT_EQ(back[0].iterations, 3);
  EXPECT_EQ(back[1].kind, ZeroKind::real_Z);
}

TEST(Catalog, Json) {
  std::ostringstream out;
  write_catalog_json(out, {record(1.5, -0.25)});
  EXPECT_NE(out.str().find("\"position_im\": -0.25"), std::string::npos);
  EXPECT_NE(out.str().find("\"kind\": \"complex_G\""), std::string::npos);
}

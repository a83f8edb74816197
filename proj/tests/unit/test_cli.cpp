#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "hardyz/format.hpp"
#include "hardyz/geval.hpp"

using namespace hardyz;
using hardyz::cli::run_cli;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string field(const std::string& line, const std::string& key) {
  const auto at = line.find(key + "=");
  if (at == std::string::npos) return {};
  const auto start = at + key.size() + 1;
  return line.substr(start, line.find_first_of(" \n", start) - start);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(ParseComplex, Forms) {
  using cli::parse_complex;
  EXPECT_EQ(parse_complex("100"), Complex(100.0, 0.0));
  EXPECT_EQ(parse_complex("1e3"), Complex(1000.0, 0.0));
  EXPECT_EQ(parse_complex("415.5-0.25i"), Complex(415.5, -0.25));
  EXPECT_EQ(parse_complex("1e2+1e-3i"), Complex(100.0, 1e-3));
  EXPECT_EQ(parse_complex("-2i"), Complex(0.0, -2.0));
  EXPECT_EQ(parse_complex("3+i"), Complex(3.0, 1.0));
  EXPECT_FALSE(parse_complex("abc").has_value());
  EXPECT_FALSE(parse_complex("1+2").has_value());
  EXPECT_FALSE(parse_complex("").has_value());
}

TEST(Cli, EvalG) {
  const CliRun r = run({"eval", "--which", "G", "--t", "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Complex g = g_auto(100.0).value;
  EXPECT_EQ(field(r.out, "value"), format_double(g.real()) + "," + format_double(g.imag()));
  EXPECT_EQ(field(r.out, "method"), "accelerated");
}

TEST(Cli, EvalThetaZero) {
  const CliRun r = run({"eval", "--which", "theta", "--t", "0"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(field(r.out, "value"), "0,0");
}

TEST(Cli, ApproxZMinusZ) {
  const CliRun a = run({"eval", "--which", "approxZ", "--t", "1000"});
  const CliRun z = run({"eval", "--which", "Z", "--t", "1000"});
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(z.code, 0);
  const std::string av = field(a.out, "value"), zv = field(z.out, "value");
  const double d = std::stod(av.substr(0, av.find(','))) - std::stod(zv.substr(0, zv.find(',')));
  EXPECT_LT(std::abs(d), 0.05);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"eval", "--which", "X", "--t", "1"}).code, 2);
  EXPECT_EQ(run({"eval", "--which", "Z", "--t", "1+2i"}).code, 2);
  EXPECT_EQ(run({"eval", "--which", "G", "--t", "nonsense"}).code, 2);
  EXPECT_EQ(run({"eval", "--which", "G", "--t", "-6.283185307179586"}).code, 1);
  EXPECT_EQ(run({"errscan", "--t0", "10", "--t1", "20"}).code, 2);
  EXPECT_EQ(run({"errscan", "--t0", "200", "--t1", "100"}).code, 2);
  EXPECT_EQ(run({"figure", "fig9"}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, HelpDocumentsFlags) {
  const CliRun r = run({"zeros", "--help"});
  for (const char* flag : {"--mode", "--t0", "--t1", "--step", "--out", "--prefix"}) {
    EXPECT_NE(r.out.find(flag), std::string::npos) << flag;
  }
}

TEST(Cli, ShowConfig) {
  const CliRun r = run({"--show-config"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("contour_C=8"), std::string::npos);
  EXPECT_NE(r.out.find("contour_sigma=0.25"), std::string::npos);
  EXPECT_NE(r.out.find("threads=1"), std::string::npos);
}

TEST(Cli, ZerosRealZ) {
  const fs::path dir = fs::temp_directory_path() / "hardyz_cli_realz";
  fs::remove_all(dir);
  const CliRun r = run({"zeros", "--mode", "realZ", "--t0", "14", "--t1", "15", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(field(r.out, "count"), "1");
  EXPECT_TRUE(fs::exists(dir / "zeros_realZ.csv"));
  EXPECT_TRUE(fs::exists(dir / "zeros_realZ.json"));
  fs::remove_all(dir);
}

TEST(Cli, ZerosEmptyRange) {
  const fs::path dir = fs::temp_directory_path() / "hardyz_cli_empty";
  const CliRun r = run({"zeros", "--mode", "complexG", "--t0", "500", "--t1", "500", "--out", dir.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(field(r.out, "count"), "0");
  fs::remove_all(dir);
}

TEST(Cli, ZerosThreadsIdentical) {
  const fs::path base = fs::temp_directory_path() / "hardyz_cli_threads";
  fs::remove_all(base);
  std::vector<std::string> outputs;
  for (const char* threads : {"1", "3"}) {
    const fs::path dir = base / threads;
    const CliRun r = run({"--threads", threads, "zeros", "--t0", "400", "--t1", "600", "--out", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(field(r.out, "count"), "3");
    outputs.push_back(r.out + slurp(dir / "zeros_complexG.csv") + slurp(dir / "zeros_complexG_evidence.csv"));
  }
  EXPECT_EQ(outputs[0], outputs[1]);
  fs::remove_all(base);
}

TEST(Cli, ErrscanSynthetic) {
  const CliRun r = run({"errscan", "--synthetic"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(std::stod(field(r.out, "slope")), -5.0 / 6.0, 1e-6);
}

TEST(Cli, ErrscanCsv) {
  const fs::path csv = fs::temp_directory_path() / "hardyz_cli_scan" / "scan.csv";
  const CliRun r = run({"errscan", "--t0", "100", "--t1", "101", "--csv", csv.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(field(r.out, "rows"), "21");
  const std::string text = slurp(csv);
  EXPECT_EQ(text.substr(0, text.find('\n')), "t,z,approx,abs_diff");
  fs::remove_all(csv.parent_path());
}

TEST(Cli, FigureBundle) {
  const fs::path dir = fs::temp_directory_path() / "hardyz_cli_fig";
  fs::remove_all(dir);
  const CliRun r = run({"figure", "fig3", "--nx", "16", "--ny", "16", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir / "fig3_grid.csv"));
  EXPECT_TRUE(fs::exists(dir / "fig3_meta.json"));
  EXPECT_NE(slurp(dir / "fig3_meta.json").find("\"re_min\": 50.0"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Cli, EnvOverride) {
  setenv("HARDYZ_CONTOUR_SIGMA", "0.3", 1);
  const CliRun r = run({"--show-config"});
  unsetenv("HARDYZ_CONTOUR_SIGMA");
  EXPECT_NE(r.out.find("contour_sigma=0.29999999999999999"), std::string::npos);
  setenv("HARDYZ_TARGET_ERR", "junk", 1);
  EXPECT_EQ(run({"selftest"}).code, 2);
  unsetenv("HARDYZ_TARGET_ERR");
}

TEST(Cli, Selftest) {
  const CliRun r = run({"selftest"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

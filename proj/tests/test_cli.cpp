#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "painleve/cli.hpp"

using namespace painleve;
using namespace painleve::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("painleve_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

int run(std::vector<std::string> args, std::string* out = nullptr) {
  args.insert(args.begin(), "painleve-airy");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream log, err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), log, err);
  if (out) *out = log.str() + err.str();
  return code;
}

RunConfig sample_config() {
  RunConfig c;
  c.command = "bridge";
  c.n = 4;
  c.lambda = ExtendedComplex<double>{cplx(0.1, -2.0 / 3.0), false};
  c.bigN = 2.5;
  c.t = cplx(-0.3, 1e-17);
  c.window = Window({-1.25, -0.5}, {0.75, 1.0 / 3.0});
  c.resolution = 7;
  c.precision = "quad";
  c.output = "some/dir";
  c.stem = "x";
  c.seed = 99;
  return c;
}

}  // namespace

TEST(Config, RoundTripsThroughJson) {
  for (const bool inf : {false, true}) {
    RunConfig c = sample_config();
    if (inf) c.lambda = ExtendedComplex<double>::infinity();
    const std::string text = dump_config(c);
    const RunConfig back = from_json(io::json::parse(text));
    EXPECT_EQ(back, c);
    EXPECT_EQ(dump_config(back), text);
  }
}

TEST(Config, RoundTripsThroughFile) {
  const fs::path dir = scratch("config");
  const RunConfig c = sample_config();
  io::write_file(dir / "c.json", dump_config(c));
  EXPECT_EQ(load_config(dir / "c.json"), c);
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(from_json(io::json::parse(R"({"command":"poles","colour":1})")), ConfigError);
  EXPECT_THROW(from_json(io::json::parse(R"({"lambda":"infinity"})")), ConfigError);
  EXPECT_THROW(from_json(io::json::parse(R"({"window":[0,0,-1,1]})")), ConfigError);
  EXPECT_THROW(from_json(io::json::parse(R"({"n":-2})")), ConfigError);
  EXPECT_THROW(from_json(io::json::parse(R"({"schema_version":99})")), ConfigError);
}

TEST(Args, FlagsAndDefaults) {
  const char* a1[] = {"p", "poles", "--n", "5", "--lambda", "inf", "--window", "-2", "-3", "4", "5"};
  const auto i1 = parse_args(11, a1);
  EXPECT_EQ(i1.config.command, "poles");
  EXPECT_EQ(i1.config.n, 5u);
  EXPECT_TRUE(i1.config.lambda.infinite);
  EXPECT_EQ(i1.config.window.lo, cplx(-2, -3));
  EXPECT_EQ(i1.config.window.hi, cplx(4, 5));

  const char* a2[] = {"p", "bridge", "--lambda", "1", "1", "--N", "5", "--t", "0.5", "-0.25"};
  const auto i2 = parse_args(10, a2);
  EXPECT_EQ(i2.config.lambda.value, cplx(1, 1));
  EXPECT_FALSE(i2.config.lambda.infinite);
  EXPECT_EQ(i2.config.bigN, 5.0);
  EXPECT_EQ(i2.config.t, cplx(0.5, -0.25));
  EXPECT_EQ(i2.config.resolution, 5);  // bridge default
  EXPECT_EQ(i2.config.window.hi, cplx(1, 1));

  const char* a3[] = {"p", "phase", "--grid", "400"};
  EXPECT_EQ(parse_args(4, a3).config.resolution, 400);
}

TEST(Args, ConfigFileWithOverrides) {
  const fs::path dir = scratch("override");
  RunConfig c = sample_config();
  c.command = "phase";
  c.precision = "double";
  io::write_file(dir / "c.json", dump_config(c));
  const std::string path = (dir / "c.json").string();
  const char* a[] = {"p", "phase", "--config", path.c_str(), "--resolution", "11"};
  const auto inv = parse_args(6, a);
  EXPECT_EQ(inv.config.resolution, 11);
  EXPECT_EQ(inv.config.window.lo, c.window.lo);  // from the file, not the phase default
  EXPECT_EQ(inv.config.seed, 99u);
}

TEST(Exit, InvalidConfigurationIsTwo) {
  EXPECT_EQ(run({"poles", "--n", "0"}), kInvalidConfig);
  EXPECT_EQ(run({"poles", "--lambda", "abc"}), kInvalidConfig);
  EXPECT_EQ(run({"phase", "--window", "1", "1", "0", "0"}), kInvalidConfig);
  EXPECT_EQ(run({"bridge", "--precision", "half"}), kInvalidConfig);
  EXPECT_EQ(run({"frobnicate"}), kInvalidConfig);
  EXPECT_EQ(run({}), kInvalidConfig);
  const fs::path dir = scratch("badcfg");
  io::write_file(dir / "bad.json", "{\"n\": 3,");
  EXPECT_EQ(run({"poles", "--config", (dir / "bad.json").string()}), kInvalidConfig);
}

TEST(Exit, NumericalFailureWritesDiagnostic) {
  // At the corner t_cr two zeros of the cubic collide and the branch cannot be continued.
  const fs::path dir = scratch("numfail");
  std::ostringstream t;
  t.precision(17);
  t << kTcr;
  EXPECT_EQ(run({"trajectories", "--t", t.str(), "0", "--out", dir.string()}), kNumericalFailure);
  ASSERT_TRUE(fs::exists(dir / "trajectories.diagnostic.json"));
  const auto d = io::json::parse(slurp(dir / "trajectories.diagnostic.json"));
  EXPECT_EQ(d["schema_version"], io::kSchemaVersion);
  EXPECT_FALSE(d["error"].get<std::string>().empty());
  EXPECT_EQ(d["config"]["command"], "trajectories");
}

TEST(Poles, CsvColumnsAndKinds) {
  const fs::path dir = scratch("poles");
  ASSERT_EQ(run({"poles", "--n", "2", "--lambda", "1", "1", "--window", "-6", "-6", "6", "6", "--out", dir.string()}), kOk);
  std::istringstream csv(slurp(dir / "poles.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "re,im,kind");
  int plus = 0, minus = 0, zero = 0;
  while (std::getline(csv, line)) {
    const std::string kind = line.substr(line.rfind(',') + 1);
    plus += kind == "pole+";
    minus += kind == "pole-";
    zero += kind == "zero";
  }
  EXPECT_GT(plus, 0);
  EXPECT_GT(minus, 0);
  EXPECT_GT(zero, 0);
  EXPECT_TRUE(fs::exists(dir / "poles.svg"));
}

TEST(Determinism, ThreadCountDoesNotChangeOutput) {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  setenv("PAINLEVE_THREADS", "1", 1);
  ASSERT_EQ(run({"phase", "--grid", "48", "--out", a.string()}), kOk);
  ASSERT_EQ(run({"bridge", "--n", "3", "--out", a.string()}), kOk);
  setenv("PAINLEVE_THREADS", "3", 1);
  ASSERT_EQ(run({"phase", "--grid", "48", "--out", b.string()}), kOk);
  ASSERT_EQ(run({"bridge", "--n", "3", "--out", b.string()}), kOk);
  unsetenv("PAINLEVE_THREADS");
  for (const char* f : {"phase.csv", "phase.json", "phase.svg", "bridge.csv"}) EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
}

TEST(Determinism, RepeatedPoleRunsAreIdentical) {
  const fs::path a = scratch("rep_a"), b = scratch("rep_b");
  for (const auto& d : {a, b}) ASSERT_EQ(run({"poles", "--n", "1", "--window", "-5", "-5", "5", "5", "--out", d.string()}), kOk);
  EXPECT_EQ(slurp(a / "poles.csv"), slurp(b / "poles.csv"));
  EXPECT_EQ(slurp(a / "poles.svg"), slurp(b / "poles.svg"));
}

TEST(Threads, EnvironmentVariableIsValidated) {
  setenv("PAINLEVE_THREADS", "0", 1);
  EXPECT_THROW(thread_count(), ConfigError);
  setenv("PAINLEVE_THREADS", "4", 1);
  EXPECT_EQ(thread_count(), 4u);
  unsetenv("PAINLEVE_THREADS");
  EXPECT_GE(thread_count(), 1u);
}

TEST(Phase, CornerPixelsOnA400Grid) {
  const fs::path dir = scratch("corners");
  ASSERT_EQ(run({"phase", "--grid", "400", "--out", dir.string()}), kOk);
  std::istringstream csv(slurp(dir / "phase.csv"));
  std::string line;
  std::vector<cplx> corners;
  while (std::getline(csv, line)) {
    if (line.find(",Corner") == std::string::npos) continue;
    const auto c1 = line.find(','), c2 = line.find(',', c1 + 1);
    corners.emplace_back(std::stod(line.substr(0, c1)), std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
  }
  ASSERT_EQ(corners.size(), 3u);
  const double half_pixel = 0.5 * 8.0 / 400 * std::sqrt(2.0);
  for (const cplx e : {cplx(kTcr), kEta * kTcr, std::conj(kEta) * kTcr}) {
    double best = 1e300;
    for (const auto& c : corners) best = std::min(best, std::abs(c - e));
    EXPECT_LE(best, half_pixel);
  }
  const auto b = io::json::parse(slurp(dir / "phase.json"));
  EXPECT_EQ(b["schema_version"], io::kSchemaVersion);
  EXPECT_EQ(b["corners"].size(), 3u);
}

TEST(Bridge, TableResidualsAreSmall) {
  const fs::path dir = scratch("bridge");
  ASSERT_EQ(run({"bridge", "--n", "3", "--N", "2", "--lambda", "inf", "--resolution", "3", "--out", dir.string()}), kOk);
  std::istringstream csv(slurp(dir / "bridge.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "t_re,t_im,beta,gamma2,p_sub,max,status");
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    std::vector<std::string> cells;
    std::stringstream s(line);
    for (std::string cell; std::getline(s, cell, ',');) cells.push_back(cell);
    ASSERT_EQ(cells.size(), 7u);
    EXPECT_EQ(cells[6], "ok");
    EXPECT_LT(std::stod(cells[5]), 1e-7);
  }
  EXPECT_EQ(rows, 9);
}

TEST(Trajectories, TrefoilJsonAndSvg) {
  const fs::path dir = scratch("traj");
  ASSERT_EQ(run({"trajectories", "--t", "0", "0", "--out", dir.string()}), kOk);
  const auto j = io::json::parse(slurp(dir / "trajectories.json"));
  EXPECT_EQ(j["label"], "Trefoil");
  EXPECT_EQ(j["short_trajectories"].size(), 3u);
  EXPECT_TRUE(j["admissible"].get<bool>());
  EXPECT_TRUE(j["s_curve"]["valid"].get<bool>());
  EXPECT_TRUE(j["equilibrium"]["ok"].get<bool>());
  EXPECT_TRUE(fs::exists(dir / "trajectories.svg"));
}

TEST(Csv, SeventeenSignificantDigits) {
  EXPECT_EQ(io::fmt(0.1), "0.10000000000000001");
  EXPECT_EQ(std::stod(io::fmt(1.0 / 3.0)), 1.0 / 3.0);
  EXPECT_EQ(io::fmt(NAN), "nan");
}

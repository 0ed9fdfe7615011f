#include <gtest/gtest.h>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "ltlab/cli/config.hpp"
#include "ltlab/cli/records.hpp"
#include "ltlab/cli/runner.hpp"
#include "ltlab/cli/serialize.hpp"

using namespace ltlab;
using namespace ltlab::cli;
namespace fs = std::filesystem;

namespace {
fs::path fresh_dir(const std::string& tag) {
  static std::mt19937_64 g(std::random_device{}());
  fs::path p = fs::temp_directory_path() / ("ltlab-test-" + tag + "-" + std::to_string(g()));
  fs::create_directories(p);
  return p;
}
ExperimentConfig yaml(const std::string& text) { return parse_config(parse_config_text(text, false)); }
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
std::map<std::string, std::string> tree(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) out[fs::relative(e.path(), dir).string()] = slurp(e.path());
  return out;
}
const char* kSim = "experiment: simulate\nseed: 3\nprocess: {class: fbm, hurst: 0.6}\ngrid: {steps: 256}\n";
}  // namespace

TEST(Sha256, KnownVectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Config, DefaultsAreFilledIn) {
  const auto c = yaml(kSim);
  EXPECT_EQ(c.experiment, Experiment::simulate);
  EXPECT_EQ(c.process.cls, ProcessClass::fbm);
  EXPECT_EQ(c.grid.n_steps(), 256u);
  EXPECT_EQ(c.grid.t_end(), 1.0);
  EXPECT_EQ(c.replicas, 1u);
  EXPECT_EQ(c.seed, 3u);
  EXPECT_EQ(c.params.at("method"), "automatic");
  EXPECT_TRUE(c.canonical.contains("grid"));
  EXPECT_FALSE(c.canonical.contains("output"));
}

TEST(Config, HashIsStableAcrossSpellings) {
  const auto a = yaml(kSim);
  const auto b = yaml("seed: 3\ngrid:\n  steps: 256\n  t_start: 0\nprocess:\n  hurst: 0.6\n  class: fbm\nexperiment: simulate\noutput: elsewhere\n");
  const auto j = parse_config(parse_config_text(R"({"experiment":"simulate","seed":3,"process":{"class":"fbm","hurst":0.6},"grid":{"steps":256}})", true));
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_EQ(a.hash(), j.hash());
  EXPECT_EQ(a.hash().size(), 64u);
  EXPECT_NE(a.hash(), yaml("experiment: simulate\nseed: 4\nprocess: {class: fbm, hurst: 0.6}\ngrid: {steps: 256}\n").hash());
  EXPECT_NE(a.hash(), parse_config(parse_config_text(kSim, false), 9).hash());
}

TEST(Config, RejectsUnknownKeysWithPath) {
  try {
    yaml("experiment: simulate\nprocess: {class: fbm, bogus: 1}\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("process.bogus", 0), 0u) << e.what();
  }
  EXPECT_THROW(yaml("experiment: simulate\nprocess: {class: fbm}\nextra: 1\n"), ConfigError);
  EXPECT_THROW(yaml("experiment: nope\n"), ConfigError);
  EXPECT_THROW(yaml("experiment: simulate\nprocess: {class: fbm, d: 0}\n"), ConfigError);
  EXPECT_THROW(yaml("experiment: simulate\nprocess: {class: fbm, hurst: 'x'}\n"), ConfigError);
  EXPECT_THROW(yaml("experiment: simulate\nseed: -1\nprocess: {class: fbm}\n"), ConfigError);
  EXPECT_THROW(parse_config_text("a: 1\na: 2\n", false), ConfigError);
}

TEST(Config, SdeSchemeAndCatalogChecked) {
  EXPECT_THROW(yaml("experiment: sde-convergence\nprocess: {class: fbm-sde, hurst: 0.4, diffusion: linear}\n"),
               ConfigError);
  EXPECT_NO_THROW(yaml("experiment: sde-convergence\nprocess: {class: fbm-sde, hurst: 0.2}\n"));
  EXPECT_THROW(yaml("experiment: sde-convergence\nprocess: {class: fbm-sde, hurst: 0.7, diffusion: nope}\n"),
               ConfigError);
  EXPECT_NO_THROW(yaml("experiment: sde-convergence\nprocess: {class: fbm-sde, hurst: 0.4, scheme: milstein-level2}\n"));
}

TEST(Format, NumbersRoundTrip) {
  std::mt19937_64 g(1);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int i = 0; i < 2000; ++i) {
    const double x = std::ldexp(u(g), static_cast<int>(u(g)));
    const std::string s = format_number(x);
    double y = 0;
    std::from_chars(s.data(), s.data() + s.size(), y);
    EXPECT_EQ(x, y) << s;
  }
  EXPECT_EQ(format_number(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(format_number(-std::numeric_limits<double>::infinity()), "-inf");
}

TEST(Csv, QuotesFieldsWhenNeeded) {
  CsvTable t({"a", "b"});
  t.add_row(std::vector<std::string>{"x,y", "say \"hi\""});
  t.add_row(std::vector<double>{1.5, 2});
  EXPECT_EQ(t.str(), "a,b\n\"x,y\",\"say \"\"hi\"\"\"\n1.5,2\n");
  EXPECT_THROW(t.add_row(std::vector<double>{1}), std::invalid_argument);
}

TEST(Records, ListRunsEmptyMissingAndCorrupted) {
  const fs::path root = fresh_dir("records");
  EXPECT_TRUE(list_runs(root).empty());
  EXPECT_THROW(list_runs(root / "missing"), std::runtime_error);
  for (const char* h : {"aaaaaaaa11", "bbbbbbbb22", "cccccccc33"}) {
    RunRecord r;
    r.config_hash = h;
    r.experiment = "simulate";
    r.started_at = r.finished_at = utc_timestamp();
    append_run_record(root, r);
  }
  auto runs = list_runs(root);
  ASSERT_EQ(runs.size(), 3u);
  EXPECT_EQ(runs[0].record.config_hash, "aaaaaaaa11");
  EXPECT_EQ(runs[2].sequence, 3u);
  {
    std::ofstream(runs[1].file) << "{ not json";
  }
  runs = list_runs(root);
  ASSERT_EQ(runs.size(), 3u);
  EXPECT_TRUE(runs[1].corrupted);
  EXPECT_FALSE(runs[1].warning.empty());
  EXPECT_FALSE(runs[2].corrupted);
  fs::remove_all(root);
}

TEST(Runner, SimulateIsByteIdenticalAcrossThreadCounts) {
  const auto c = yaml(kSim);
  const fs::path a = fresh_dir("a"), b = fresh_dir("b");
  const auto ra = run(c, {a, 1, false, true});
  const auto rb = run(c, {b, 2, false, true});
  ASSERT_EQ(ra.exit_code, kSuccess) << ra.message;
  ASSERT_EQ(rb.exit_code, kSuccess) << rb.message;
  EXPECT_EQ(ra.directory.filename(), output_directory_name(c));
  const auto ta = tree(ra.directory), tb = tree(rb.directory);
  EXPECT_FALSE(ta.empty());
  EXPECT_EQ(ta, tb);
  EXPECT_EQ(list_runs(a).size(), 1u);
  const auto rep = nlohmann::json::parse(slurp(ra.directory / "report.json"));
  EXPECT_EQ(rep.at("config_hash"), c.hash());
  EXPECT_EQ(rep.at("artifact_version"), kArtifactVersion);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Runner, HypothesisViolationIsAConfigError) {
  const auto c = yaml("experiment: scaling\nprocess: {class: fbm, hurst: 0.7, d: 2}\n");
  const fs::path root = fresh_dir("hyp");
  const auto r = run(c, {root, 1, false, false});
  EXPECT_EQ(r.exit_code, kConfigError);
  EXPECT_NE(r.message.find("α ∈ (0,1/d)"), std::string::npos) << r.message;
  EXPECT_NE(r.message.find("scaling"), std::string::npos) << r.message;
  fs::remove_all(root);
}

TEST(Runner, AnalyticsPasses) {
  const auto c = yaml("experiment: analytics\nparams: {k_max: 8, bound_k: 12, simplex_samples: 20000, gamma_n_max: 50}\n");
  const fs::path root = fresh_dir("an");
  const auto r = run(c, {root, 1, false, true});
  EXPECT_EQ(r.exit_code, kSuccess) << r.message;
  EXPECT_TRUE(r.pass);
  fs::remove_all(root);
}

#ifdef LTLAB_CLI_PATH
TEST(Binary, ExitCodes) {
  const fs::path root = fresh_dir("bin");
  const fs::path good = root / "sim.yaml", bad = root / "bad.yaml";
  std::ofstream(good) << kSim;
  std::ofstream(bad) << "experiment: simulate\nprocess: {class: fbm, bogus: 1}\n";
  const std::string cli = LTLAB_CLI_PATH;
  const auto code = [&](const std::string& args) {
    const int s = std::system((cli + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(s);
  };
  EXPECT_EQ(code("--config " + good.string() + " --out " + (root / "o").string()), 0);
  EXPECT_EQ(code("--config " + bad.string() + " --out " + (root / "o").string()), 1);
  EXPECT_EQ(code("lnd --config " + good.string() + " --out " + (root / "o").string()), 1);
  EXPECT_EQ(code("--list-runs " + (root / "o").string()), 0);
  fs::remove_all(root);
}
#endif

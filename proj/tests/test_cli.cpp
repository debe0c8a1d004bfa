#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "algpaths/experiment.hpp"
#include "test_support.hpp"

using namespace algpaths;
using algpaths::testing::diag;
using algpaths::testing::mat;

namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / ("algpaths_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

fs::path write_json(const std::string& name, const Json& j) {
  const fs::path p = scratch_dir() / name;
  std::ofstream(p) << j.dump(2);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig make(const std::string& command) {
  ExperimentConfig c;
  c.command = command;
  return c;
}

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Run, DecomposeGivenMatrix) {
  auto c = make("decompose");
  c.input = write_json("oblique.json", Json{{"matrix", to_json(mat({{0, 1}, {0, 1}}))}}).string();
  const auto out = run(c);
  ASSERT_EQ(out.exit_code, 0) << out.diagnostics;
  const Json r = Json::parse(out.report);
  EXPECT_EQ(r["status"], "ok");
  EXPECT_EQ(r["tool"], "algpaths");
  EXPECT_EQ(r["config"]["command"], "decompose");
}

TEST(Run, DecomposeCsv) {
  auto c = make("decompose");
  c.input = write_json("proj.json", Json{{"matrix", to_json(diag({1, 0, 0}))}}).string();
  c.format = "csv";
  const auto out = run(c);
  ASSERT_EQ(out.exit_code, 0);
  EXPECT_EQ(out.report.substr(0, out.report.find('\n')), "root,rank,norm");
}

TEST(Run, ConnectThenVerify) {
  auto c = make("connect");
  c.method = "polygonal";
  c.input = write_json("pair.json", Json{{"a", to_json(diag({1, 0}))}, {"b", to_json(mat({{1, 0.5}, {0, 0}}))}})
                .string();
  const auto out = run(c);
  ASSERT_EQ(out.exit_code, 0) << out.diagnostics;
  auto v = make("verify");
  v.input = write_json("report.json", Json::parse(out.report)).string();
  const auto checked = run(v);
  EXPECT_EQ(checked.exit_code, 0);
  EXPECT_EQ(Json::parse(checked.report)["result"]["kind"], "polygonal");
}

TEST(Run, LocalMethodOnAntipodalPairIsPreconditionError) {
  auto c = make("connect");
  c.method = "exp-local";
  c.input = write_json("anti.json", Json{{"a", to_json(diag({1, 0}))}, {"b", to_json(diag({0, 1}))}}).string();
  const auto out = run(c);
  EXPECT_EQ(out.exit_code, 3);
  EXPECT_EQ(Json::parse(out.report)["error"]["kind"], "NotLocallyClose");
}

TEST(Run, VerifyRejectsBrokenPath) {
  const Json path{{"kind", "polynomial"},
                  {"roots", Json::array({Json::array({0.0, 0.0}), Json::array({1.0, 0.0})})},
                  {"coefficients", Json::array({to_json(diag({1, 0})), to_json(diag({-1, 1}))})}};
  auto v = make("verify");
  v.input = write_json("broken.json", path).string();
  EXPECT_EQ(run(v).exit_code, 2);
}

TEST(Run, SamplingNeedsSeed) {
  auto c = make("sample");
  c.sig = "1,1";
  EXPECT_EQ(run(c).exit_code, 3);
  c.seed = 4;
  c.budget = 3;
  const auto out = run(c);
  ASSERT_EQ(out.exit_code, 0);
  EXPECT_EQ(Json::parse(out.report)["result"]["elements"].size(), 3u);
}

TEST(Run, LineFarPointsAreRelative) {
  auto c = make("line");
  c.roots = "0,1,2";
  c.sig = "2,1,1";
  c.seed = 5;
  const auto out = run(c);
  ASSERT_EQ(out.exit_code, 0) << out.diagnostics;
  const Json r = Json::parse(out.report)["result"];
  EXPECT_LE(r["witness"]["certificate"].get<double>(), 1e-9);
  for (const auto& far : r["far_points"]) EXPECT_LE(far["relative_residual"].get<double>(), 1e-9);
}

TEST(Run, UnknownCommand) { EXPECT_EQ(run(make("bogus")).exit_code, 3); }

TEST(Run, ReportsAreDeterministic) {
  auto c = make("mindeg");
  c.sig = "1,1";
  c.seed = 12;
  c.max_degree = 3;
  c.budget = 4;
  EXPECT_EQ(run(c).report, run(c).report);
  auto d = make("distance");
  d.sig = "1,2";
  d.sig2 = "2,1";
  d.seed = 3;
  d.budget = 4;
  d.format = "csv";
  EXPECT_EQ(run(d).report, run(d).report);
}

TEST(Config, JsonRoundTrip) {
  auto c = make("distance");
  c.roots = "1,i,-1";
  c.sig = "1,1,1";
  c.sig2 = "0,2,1";
  c.seed = 77;
  c.budget = 9;
  c.tol.residual_tol = 1e-8;
  c.criteria = {2, 5};
  const ExperimentConfig back = config_from_json(Json::parse(to_json(c).dump()));
  EXPECT_EQ(to_json(back).dump(), to_json(c).dump());
  EXPECT_EQ(config_from_json(Json{{"budget", 5}}, c).sig, "1,1,1");
}

TEST(Config, RejectsMistypedField) {
  EXPECT_THROW(config_from_json(Json{{"budget", "many"}}), Error);
}

TEST(Suite, ImpossibleToleranceFails) {
  auto c = make("suite");
  c.criteria = {7};
  c.tol.residual_tol = 1e-30;
  const auto out = run(c);
  EXPECT_NE(out.exit_code, 0);
  EXPECT_NE(out.diagnostics.find("[FAIL]"), std::string::npos);
}

TEST(Binary, ExitCodesAndOutputFile) {
  const std::string exe = ALGPATHS_CLI_PATH;
  const fs::path out = scratch_dir() / "sample.json";
  EXPECT_EQ(shell(exe + " sample --sig 1,2 --seed 5 --out " + out.string() + " > /dev/null"), 0);
  const Json r = Json::parse(slurp(out));
  EXPECT_EQ(r["status"], "ok");
  EXPECT_EQ(r["config"]["seed"], 5);
  EXPECT_EQ(shell(exe + " sample --sig 1,2 > /dev/null 2>&1"), 3);
  EXPECT_EQ(shell(exe + " nonsense > /dev/null 2>&1"), 3);
  EXPECT_EQ(shell(exe + " --help > /dev/null"), 0);
}

TEST(Binary, ConfigFileWithOverride) {
  const std::string exe = ALGPATHS_CLI_PATH;
  const fs::path cfg = write_json("cfg.json", Json{{"command", "sample"}, {"sig", "1,1"}, {"seed", 2}, {"budget", 2}});
  const fs::path out = scratch_dir() / "override.json";
  ASSERT_EQ(shell(exe + " sample --config " + cfg.string() + " --budget 4 --out " + out.string() + " > /dev/null"), 0);
  const Json r = Json::parse(slurp(out));
  EXPECT_EQ(r["result"]["elements"].size(), 4u);
  EXPECT_EQ(r["config"]["seed"], 2);
}

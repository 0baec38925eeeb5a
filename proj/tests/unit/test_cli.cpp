#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"
#include "support.hpp"

using namespace clebsch;
using namespace clebsch::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("clebsch-test-" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t line_count(const fs::path& path) {
  std::ifstream in(path);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) ++n;
  return n;
}

ExperimentConfig preset_config(const std::string& preset, const fs::path& out) {
  ExperimentConfig cfg;
  cfg.preset = preset;
  cfg.out = out.string();
  return cfg;
}

ExperimentConfig parse(const std::string& text) {
  std::istringstream in(text);
  return ExperimentConfig::from_ini(IniFile::parse(in));
}

}  // namespace

TEST_CASE("INI parsing") {
  std::istringstream in(
      "# experiment\n"
      "top = 1\n"
      "[experiment]\n"
      "preset = kida   ; trailing comment\n"
      "  dt=0.05\n"
      "\n"
      "[params]\n"
      "epsilon = 0.25\n");
  const IniFile ini = IniFile::parse(in);
  CHECK(ini.get("", "top") == "1");
  CHECK(ini.get("experiment", "preset") == "kida");
  CHECK(ini.get("experiment", "dt") == "0.05");
  CHECK_FALSE(ini.has("experiment", "t_end"));
  CHECK(ini.section("params").size() == 1);
  CHECK(ini.section("missing").empty());

  auto bad = [](const std::string& text) {
    std::istringstream s(text);
    return IniFile::parse(s);
  };
  CHECK_THROWS_AS(bad("[experiment\n"), ParseError);
  CHECK_THROWS_AS(bad("[]\n"), ParseError);
  CHECK_THROWS_AS(bad("novalue\n"), ParseError);
  CHECK_THROWS_AS(bad("a = 1\na = 2\n"), ParseError);
  CHECK_THROWS_AS(bad(" = 2\n"), ParseError);
  CHECK_THROWS_AS(IniFile::load("/nonexistent/x.ini"), ParseError);
}

TEST_CASE("experiment config from INI") {
  const ExperimentConfig cfg = parse(
      "[experiment]\npreset = rattleback\nsign = minus\ndt = 0.02\nt_end = 3\n"
      "integrator = midpoint\nsample_stride = 5\nout = somewhere\n"
      "[params]\nlambda = 3\n"
      "[pinning]\nstrategy = gauss_newton\nseed = 9\n"
      "[diagnostics]\ndrift_factor = 0.2\n"
      "[convergence]\nt_end = 0.5\ndts = 0.1, 0.05, 0.025\n");
  CHECK(cfg.preset == "rattleback");
  CHECK(cfg.sign == BracketSign::minus);
  CHECK(cfg.dt == 0.02);
  CHECK(cfg.t_end == 3.0);
  CHECK(cfg.integrator == "midpoint");
  CHECK(cfg.sample_stride == 5);
  CHECK(cfg.params.at("lambda") == 3.0);
  CHECK(cfg.pinning == PinningMode::gauss_newton);
  CHECK(cfg.seed == 9u);
  CHECK(cfg.drift.factor == 0.2);
  CHECK(cfg.convergence_dts.size() == 3);
  CHECK_NOTHROW(cfg.validate());

  const ResolvedSystem sys = resolve(cfg);
  CHECK(sys.sign == BracketSign::minus);
  CHECK(sys.dt == 0.02);
  CHECK(std::get<GaussNewton>(sys.pinning.strategy).random_seed == 9u);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse("[bogus]\n"), ParseError);
  CHECK_THROWS_AS(parse("[experiment]\nspeed = 3\n"), ParseError);
  CHECK_THROWS_AS(parse("[experiment]\ndt = fast\n"), ParseError);
  CHECK_THROWS_AS(parse("[experiment]\nsign = sideways\n"), ParseError);
  CHECK_THROWS_AS(parse("[pinning]\nstrategy = guess\n"), ParseError);
  CHECK_THROWS_AS(parse("[system]\nhamiltonian = cubic\n"), ParseError);
  CHECK_THROWS_AS(parse("").validate(), ContractViolation);
  CHECK_THROWS_AS(parse("[experiment]\npreset = kida\ndt = -1\n").validate(), ContractViolation);
  CHECK_THROWS_AS(parse("[experiment]\npreset = kida\nintegrator = euler\n").validate(),
                  ContractViolation);
  CHECK_THROWS_AS(parse("[experiment]\npreset = kida\n[pinning]\nstrategy = fixed_q\n").validate(),
                  ContractViolation);
  CHECK_THROWS_AS(resolve(parse("[experiment]\npreset = kida\n[params]\nfoo = 1\n")),
                  ContractViolation);
}

TEST_CASE("check command on the presets") {
  std::ostringstream log;
  for (const std::string name : {"kida", "rattleback", "heavy_top"}) {
    const fs::path dir = scratch("check-" + name);
    CHECK(cmd_check(preset_config(name, dir), log) == kOk);
    const auto report = nlohmann::json::parse(slurp(dir / "check.json"));
    CHECK(report["passed"] == true);
    CHECK(report["algebra"]["center_dimension"] == 0);
    CHECK(report["algebra"]["semisimple"] == (name == "kida"));
  }
}

TEST_CASE("check command rejects a broken algebra") {
  const fs::path dir = scratch("check-broken");
  ExperimentConfig cfg;
  cfg.structure_file = CLEBSCH_TEST_DATA "/broken_jacobi.sc";
  cfg.mu0 = {0.0, 0.0, 0.0};
  cfg.out = dir.string();
  std::ostringstream log;
  CHECK(cmd_check(cfg, log) == kCheckFailed);
  CHECK(log.str().find("Jacobi") != std::string::npos);

  cfg.structure_file = CLEBSCH_TEST_DATA "/so3.sc";
  cfg.mu0 = {0.0, 0.0, 0.0};
  CHECK(cmd_check(cfg, log) == kOk);
}

TEST_CASE("run command writes consistent CSVs and a summary") {
  const fs::path dir = scratch("run");
  ExperimentConfig cfg = preset_config("kida", dir);
  cfg.dt = 0.1;
  cfg.t_end = 10.0;
  cfg.sample_stride = 3;
  std::ostringstream log;
  REQUIRE(cmd_run(cfg, log) == kOk);
  // floor(t_end / dt / stride) + 1 rows plus the header.
  const std::size_t rows = 100 / 3 + 1;
  CHECK(line_count(dir / "mu.csv") == rows + 1);
  CHECK(line_count(dir / "qp.csv") == rows + 1);
  CHECK(line_count(dir / "invariants.csv") == rows + 1);
  CHECK(slurp(dir / "mu.csv").rfind("t,mu1,mu2,mu3\n", 0) == 0);
  CHECK(slurp(dir / "qp.csv").rfind("t,q_mu1,q_mu2,q_mu3,p_mu1,p_mu2,p_mu3\n", 0) == 0);
  CHECK(slurp(dir / "invariants.csv")
            .rfind("t,h_relerr,f1_relerr,F0_relerr,kappa_qq_relerr,kappa_pp_relerr\n", 0) == 0);

  const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(summary["parameters"]["dt"] == 0.1);
  CHECK(summary["parameters"]["params"]["epsilon"] == 0.5);
  CHECK(summary["newton"]["steps"] == 100);
  CHECK(summary["newton"]["max_residual"].get<double>() <= 1e-13);
  CHECK(summary["invariants"]["F0"]["max_abs_error"].get<double>() < 1e-11);
  CHECK_FALSE(summary["initial_point"].contains("random_seed"));
}

TEST_CASE("run output is bit-identical across runs") {
  const fs::path a = scratch("det-a"), b = scratch("det-b");
  ExperimentConfig cfg = preset_config("rattleback", a);
  cfg.t_end = 2.0;
  std::ostringstream log;
  REQUIRE(cmd_run(cfg, log) == kOk);
  cfg.out = b.string();
  REQUIRE(cmd_run(cfg, log) == kOk);
  for (const char* file : {"mu.csv", "qp.csv", "invariants.csv"}) {
    CHECK(slurp(a / file) == slurp(b / file));
  }
}

TEST_CASE("randomised pinning seed is recorded") {
  const fs::path dir = scratch("seed");
  ExperimentConfig cfg = preset_config("kida", dir);
  cfg.t_end = 0.5;
  cfg.seed = 17;
  std::ostringstream log;
  REQUIRE(cmd_run(cfg, log) == kOk);
  const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(summary["initial_point"]["random_seed"] == 17);
}

TEST_CASE("compare command") {
  const fs::path dir = scratch("compare");
  ExperimentConfig cfg = preset_config("kida", dir);
  cfg.dt = 0.1;
  cfg.t_end = 50.0;
  std::ostringstream log;
  REQUIRE(cmd_compare(cfg, log) == kOk);
  for (const char* file : {"collective_mu.csv", "baseline_mu.csv",
                           "collective_invariants.csv", "baseline_invariants.csv"}) {
    CHECK(line_count(dir / file) == 502);
  }
  const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(summary["verdicts"]["f1"]["drift_free"] == true);
  CHECK(summary["baseline_integrator"] == "rk4");
}

TEST_CASE("compare with t_end = 0 is an empty comparison") {
  const fs::path dir = scratch("compare-empty");
  ExperimentConfig cfg = preset_config("heavy_top", dir);
  cfg.t_end = 0.0;
  std::ostringstream log;
  CHECK(cmd_compare(cfg, log) == kOk);
  CHECK(line_count(dir / "collective_mu.csv") == 2);
  const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(summary["all_drift_free"] == true);
}

TEST_CASE("convergence command") {
  const fs::path dir = scratch("convergence");
  ExperimentConfig cfg = preset_config("kida", dir);
  std::ostringstream log;
  REQUIRE(cmd_convergence(cfg, log) == kOk);
  const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  REQUIRE(summary["orders"].size() == 4);
  for (const auto& o : summary["orders"]) {
    CHECK(o["order"].get<double>() ==
          doctest::Approx(o["expected"].get<double>()).epsilon(0.05));
  }
  CHECK(line_count(dir / "convergence.csv") == 1 + 4 * 4);
}

TEST_CASE("solver failures surface as errors") {
  const fs::path dir = scratch("fail");
  ExperimentConfig cfg = preset_config("kida", dir);
  cfg.pinning = PinningMode::fixed_q;
  cfg.fixed_q = {1.0, 0.0, 0.0};  // <mu0, q> = 1, unreachable
  std::ostringstream log;
  CHECK_THROWS_AS(cmd_run(cfg, log), SolverError);
}

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "experiment.hpp"
#include "nonclassical/errors.hpp"
#include "nonclassical/kinetic.hpp"
#include "nonclassical/shock_algebra.hpp"

using namespace nonclassical;
using cli::ExperimentConfig;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("nonclassical_test_cli_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

int run_quiet(const ExperimentConfig& cfg, std::string* text = nullptr) {
  std::ostringstream out;
  const int code = cli::run(cfg, out);
  if (text) *text = out.str();
  return code;
}

}  // namespace

TEST_CASE("config round-trips and rejects unknown keys") {
  ExperimentConfig cfg;
  CHECK(ExperimentConfig::parse(cfg.emit()) == cfg);
  cfg.command = "fd";
  cfg.set("alpha", "0.1");
  cfg.set("domain", "-2.5:7");
  cfg.set("u_grid", "0.2:2:10");
  cfg.set("seed", "18446744073709551615");
  cfg.set("init", "steps:1,0,-0.5,1,1");
  const auto back = ExperimentConfig::parse(cfg.emit());
  CHECK(back == cfg);
  CHECK(back.alpha == 0.1);
  CHECK(back.emit() == cfg.emit());
  CHECK(ExperimentConfig::keys().size() == 23);

  CHECK_THROWS_AS(ExperimentConfig::parse("colour=red\n"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("alpha=1\nalpha=2\n"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("alpha\n"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("alpha=abc\n"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("order=3.5\n"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("domain=1:0\n"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("command=plot\n"), ConfigError);
  CHECK(ExperimentConfig::parse("# comment\n\n h = 0.02 \n").h == 0.02);
}

TEST_CASE("u grid specifications") {
  const auto g = cli::parse_u_grid("0.2:2:10");
  REQUIRE(g.size() == 10);
  CHECK(g.front() == 0.2);
  CHECK(g.back() == 2.0);
  CHECK(cli::parse_u_grid("1,-2, 3") == std::vector<double>{1.0, -2.0, 3.0});
  CHECK_THROWS_AS(cli::parse_u_grid("1:2"), ConfigError);
  CHECK_THROWS_AS(cli::parse_u_grid("2:1:5"), ConfigError);
}

TEST_CASE("exit codes by error category") {
  auto code = [](auto ex) { return cli::exit_code_for(std::make_exception_ptr(ex)); };
  CHECK(code(ConfigError("x")) == 2);
  CHECK(code(DegenerateShock()) == 2);
  CHECK(code(NumericalError("x")) == 3);
  CHECK(code(InvariantViolation("x")) == 4);
  CHECK(code(std::runtime_error("x")) == 1);
}

TEST_CASE("riemann command output is deterministic and carries the config") {
  ExperimentConfig cfg;
  cfg.output = scratch("riemann").string();
  std::string text;
  REQUIRE(run_quiet(cfg, &text) == 0);
  CHECK(text.find("NonclassicalShock u_minus=1 u_plus=-0.75") != std::string::npos);
  CHECK(text.find("ClassicalShock u_minus=-0.75 u_plus=-0.5") != std::string::npos);
  const auto waves = slurp(std::filesystem::path(cfg.output) / "riemann_waves.csv");
  CHECK(waves.rfind("# nonclassical_lab ", 0) == 0);
  CHECK(waves.find("# kinetic=linear:0.75\n") != std::string::npos);
  CHECK(waves.find("kind,u_minus,u_plus,speed_lo,speed_hi\nNonclassicalShock,1,-0.75,0.8125,0.8125\n") !=
        std::string::npos);
  const auto profile = slurp(std::filesystem::path(cfg.output) / "riemann_profile.csv");
  REQUIRE(run_quiet(cfg) == 0);
  CHECK(slurp(std::filesystem::path(cfg.output) / "riemann_profile.csv") == profile);

  cfg.kinetic = "linear:2";
  CHECK_THROWS_AS(run_quiet(cfg), ConfigError);
  cfg.kinetic = "quadratic";
  CHECK_THROWS_AS(run_quiet(cfg), ConfigError);
}

TEST_CASE("tw command writes a linear table for p = 1/2") {
  ExperimentConfig cfg;
  cfg.command = "tw";
  cfg.alpha = 1.0;
  cfg.p = 0.5;
  cfg.u_grid = "0.2:2:10";
  cfg.output = scratch("tw").string();
  REQUIRE(run_quiet(cfg) == 0);
  const auto table = parse_kinetic_table(slurp(std::filesystem::path(cfg.output) / "tw_kinetic_table.txt"));
  REQUIRE(table.u_minus.size() == 10);
  const double r0 = table.u_plus.front() / table.u_minus.front();
  for (std::size_t i = 0; i < 10; ++i) CHECK(table.u_plus[i] / table.u_minus[i] == doctest::Approx(r0).epsilon(1e-6));
}

TEST_CASE("cauchy and fd commands") {
  ExperimentConfig cfg;
  cfg.command = "cauchy";
  cfg.init = "steps:1,0,-0.5,1,1";
  cfg.t_end = 3.0;
  cfg.output = scratch("cauchy").string();
  std::string text;
  REQUIRE(run_quiet(cfg, &text) == 0);
  CHECK(text.find("interactions=") != std::string::npos);
  CHECK(std::filesystem::exists(std::filesystem::path(cfg.output) / "cauchy_diagnostics.csv"));
  cfg.fan_step = 0.0;
  CHECK_THROWS_AS(run_quiet(cfg), ConfigError);

  cfg = ExperimentConfig{};
  cfg.command = "fd";
  cfg.boundary = "periodic";
  cfg.domain_lo = 0.0;
  cfg.domain_hi = 1.0;
  cfg.h = 0.02;
  cfg.beta = 0.0;
  cfg.alpha = 0.0;
  cfg.init = "sine:0.1:0.1:1";
  cfg.t_end = 0.5;
  cfg.output = scratch("fd").string();
  REQUIRE(run_quiet(cfg) == 0);
  const auto snap = slurp(std::filesystem::path(cfg.output) / "fd_snapshot.csv");
  CHECK(snap.find("\nx,u\n") != std::string::npos);
  cfg.order = 5;
  CHECK_THROWS_AS(run_quiet(cfg), ConfigError);
  cfg.order = 3;
  cfg.init = "gaussian";
  CHECK_THROWS_AS(run_quiet(cfg), ConfigError);
}

TEST_CASE("validate command") {
  ExperimentConfig cfg;
  cfg.command = "validate";
  cfg.criterion = "3,zero-dissipation";
  cfg.output = scratch("validate").string();
  std::string text;
  CHECK(run_quiet(cfg, &text) == 0);
  CHECK(text.rfind("PASS 3 zero-dissipation", 0) == 0);
  cfg.criterion = "12";
  CHECK_THROWS_AS(run_quiet(cfg), ConfigError);
}

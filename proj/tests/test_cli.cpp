#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <sys/wait.h>

#include "specwave/catalog.hpp"
#include "specwave/cli.hpp"
#include "specwave/errors.hpp"
#include "specwave/measures.hpp"
#include "specwave/roots.hpp"

using namespace specwave;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

// In-process run of the front end.
Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "specwave");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// Child-process exit status of the installed executable.
int run_binary(const std::string& args) {
  const std::string cmd = std::string(SPECWAVE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "specwave_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Data rows of a CSV (comment and header lines dropped).
std::vector<std::vector<double>> rows(const std::string& csv) {
  std::vector<std::vector<double>> out;
  std::istringstream in(csv);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<double> r;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) r.push_back(std::stod(cell));
    out.push_back(r);
  }
  return out;
}

}  // namespace

TEST_CASE("config text parsing") {
  const auto s = cli::parse_config_text("# comment\noperator = strip\n\nm=1,2  # trailing\n", "a.cfg");
  CHECK(s.at("operator").value == "strip");
  CHECK(s.at("m").value == "1,2");
  CHECK(s.at("m").origin == "a.cfg:4");

  auto message = [](const std::string& text) {
    try {
      cli::parse_config_text(text, "b.cfg");
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("m=1\nnonsense\n").find("b.cfg:2") != std::string::npos);
  CHECK(message("m=1\nbogus=3\n").find("b.cfg:2") != std::string::npos);
  CHECK(message("m=1\nm=2\n").find("b.cfg:2") != std::string::npos);
}

TEST_CASE("settings precedence: flags over file over defaults") {
  const auto file = cli::parse_config_text("eps=0.2\nm=2\n", "run.cfg");
  cli::SettingMap flags{{"eps", {"0.05", "--eps"}}};
  const auto cfg = cli::resolve_config(cli::Command::kernel, {file, flags});
  CHECK(cfg.eps == std::vector<double>{0.05});
  CHECK(cfg.m == std::vector<int>{2});
  CHECK(cfg.n == 401);

  const auto path = scratch("prec.cfg");
  std::ofstream(path) << "m=3\neps=0.5\n";
  const auto r = run_cli({"kernel", "--config", path.string(), "--m", "2", "--n", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# m=2\n") != std::string::npos);
  CHECK(r.out.find("# eps=0.5\n") != std::string::npos);
}

TEST_CASE("validation errors name the field") {
  try {
    cli::resolve_config(cli::Command::kernel, {{{"m", {"0", "--m"}}}});
    FAIL("no error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("'m'") != std::string::npos);
    CHECK(std::string(e.what()).find("--m") != std::string::npos);
  }
  CHECK_THROWS_AS(cli::resolve_config(cli::Command::kernel, {{{"eps", {"-1", "--eps"}}}}), ConfigError);
  CHECK_THROWS_AS(cli::resolve_config(cli::Command::measure, {{{"f", {"nope", "--f"}}}}), ConfigError);
}

TEST_CASE("kernel command") {
  auto r = run_cli({"kernel", "--m", "1", "--n", "3", "--window", "-1,1"});
  REQUIRE(r.code == 0);
  const auto t = rows(r.out);
  REQUIRE(t.size() == 3);
  CHECK(t[1][0] == 0.0);
  CHECK(std::abs(t[1][1] - 1.0 / pi) < 1e-16);

  const auto path = scratch("k6.csv");
  r = run_cli({"kernel", "--m", "6", "--out", path.string()});
  REQUIRE(r.code == 0);
  const auto side = nlohmann::json::parse(slurp(path.string() + ".json"));
  CHECK(side["columns"] == nlohmann::json::array({"x", "K"}));
  CHECK(side["moments_passed"] == true);
  CHECK(side["normalization_error"].get<double>() < 1e-6);
  for (const auto& e : side["moment_errors"]) CHECK(e.get<double>() < 1e-6);
  CHECK(side["moment_errors"].size() == 5);
}

TEST_CASE("exit codes of the executable") {
  CHECK(run_binary("kernel --m 1 --n 3") == 0);
  CHECK(run_binary("kernel --m 0") == 2);
  CHECK(run_binary("kernel --eps abc") == 2);
  CHECK(run_binary("converge --eps 0.1,0.01") == 2);
  CHECK(run_binary("converge --operator schrodinger --mode sup") == 4);
  CHECK(run_binary("converge --operator strip --mode sup") == 4);
  CHECK(run_binary("kernel --config /nonexistent/file.cfg") == 2);
}

TEST_CASE("non-finite output is a numerical failure") {
  cli::OutputTable t;
  t.columns = {"x", "y"};
  t.rows = {{0.0, 1.0}, {1.0, std::numeric_limits<double>::quiet_NaN()}};
  CHECK_THROWS_AS(cli::check_finite(t), NumericalFailure);
  CHECK(cli::exit_code(NumericalFailure("x")) == 3);
  CHECK(cli::exit_code(NoReferenceAvailable("x")) == 4);
  CHECK(cli::exit_code(ConfigError("x")) == 2);
}

TEST_CASE("output is reproducible and the echo reruns the computation") {
  const std::vector<std::string> args{"eigenfunction", "--operator", "multiplication", "--m", "2",
                                      "--eps", "0.05", "--n", "400"};
  const auto a = run_cli(args), b = run_cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);

  // Strip "# " from the echo lines and feed them back as a config file.
  std::istringstream in(a.out);
  std::string line, cfg_text;
  std::getline(in, line);  // version line
  while (std::getline(in, line) && line.rfind("# ", 0) == 0)
    if (line.rfind("# command=", 0) != 0) cfg_text += line.substr(2) + "\n";
  const auto path = scratch("echo.cfg");
  std::ofstream(path) << cfg_text;
  const auto c = run_cli({"eigenfunction", "--config", path.string()});
  REQUIRE(c.code == 0);
  CHECK(c.out == a.out);
}

TEST_CASE("measure on the cubic operators") {
  const double edge = cubic_edge;
  auto r = run_cli({"measure", "--operator", "multiplication", "--m", "1", "--eps", "0.01", "--f", "cos2pi",
                    "--lambda", "-0.6:0.6:241"});
  REQUIRE(r.code == 0);
  const auto t = rows(r.out);
  // Peaks at the band edges; at 0 the roots +-1 cross the ends of (-1, 1) and
  // the density drops by (f(1)^2 - f(-1)^2) / 2 = 4.
  auto peak_near = [&](double target) {
    double best = -1.0, at = 0.0;
    for (const auto& row : t)
      if (std::abs(row[0] - target) < 0.1 && row[1] > best) {
        best = row[1];
        at = row[0];
      }
    return at;
  };
  CHECK(std::abs(peak_near(edge) - edge) < 0.03);
  CHECK(std::abs(peak_near(-edge) + edge) < 0.03);
  auto value_at = [&](double target) {
    for (const auto& row : t)
      if (std::abs(row[0] - target) < 1e-12) return row[1];
    return std::numeric_limits<double>::quiet_NaN();
  };
  CHECK(std::abs(value_at(-0.05) - value_at(0.05) - 4.0) < 0.5);

  // Integral over lambda approximates ||f||^2 = 13/3 + 1/(8 pi^2) (eps tails lost).
  r = run_cli({"measure", "--operator", "multiplication", "--m", "4", "--eps", "0.01", "--f", "cos2pi",
               "--lambda", "-1:1:2001"});
  REQUIRE(r.code == 0);
  const auto w = rows(r.out);
  double integral = 0.0;
  for (std::size_t i = 1; i < w.size(); ++i) integral += 0.5 * (w[i][1] + w[i - 1][1]) * (w[i][0] - w[i - 1][0]);
  const double norm2 = 13.0 / 3.0 + 1.0 / (8.0 * pi * pi);
  CHECK(std::abs(integral - norm2) < 0.02 * norm2);

  r = run_cli({"measure", "--operator", "rank_one", "--m", "4", "--eps", "0.01", "--lambda",
               cli::format_number(-edge) + "," + cli::format_number(edge)});
  REQUIRE(r.code == 0);
  for (const auto& row : rows(r.out)) CHECK(std::isfinite(row[1]));
}

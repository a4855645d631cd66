#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "specwave/types.hpp"

namespace specwave::cli {

inline constexpr const char* version = "0.1.0";

enum class Command { kernel, eigenfunction, measure, converge };
enum class OperatorKind { multiplication, rank_one, free_laplacian, schrodinger, strip };

std::string to_string(Command c);
std::string to_string(OperatorKind op);

// A raw key=value setting and where it came from ("--eps", "run.cfg:3").
struct Setting {
  std::string value;
  std::string origin;
};
using SettingMap = std::map<std::string, Setting>;

// Keys accepted in config files and as --flags, in echo order.
const std::vector<std::string>& setting_keys();

// Flat key=value text; '#' starts a comment. Errors name the line.
SettingMap parse_config_text(const std::string& text, const std::string& source);
SettingMap read_config_file(const std::string& path);

struct RunConfig {
  Command command = Command::kernel;
  OperatorKind op = OperatorKind::multiplication;
  std::vector<int> m;
  std::vector<double> eps;
  std::vector<double> lambda;
  std::string f, phi, potential;
  double L = 0.0;
  int n = 0;
  double k_max = 8.0;
  int n_k = 4096;
  int n_y = 20;
  std::string mode = "weak";  // converge: weak | sup
  std::optional<Interval> window;
  std::string out;

  // Every effective value as key=value, enough to rerun the computation.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

// Fills unset keys with the per-operator defaults and validates everything.
// Later maps win: pass {file, flags}.
RunConfig resolve_config(Command command, const std::vector<SettingMap>& layers);

struct OutputTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> header;  // echoed as "# key=value"
  nlohmann::json sidecar = nlohmann::json::object();
  std::vector<std::string> warnings;
};

OutputTable cmd_kernel(const RunConfig& cfg);
OutputTable cmd_eigenfunction(const RunConfig& cfg);
OutputTable cmd_measure(const RunConfig& cfg);
OutputTable cmd_converge(const RunConfig& cfg);
OutputTable run(const RunConfig& cfg);

// 17 significant digits.
std::string format_number(double x);

// Throws NumericalFailure naming the first non-finite cell.
void check_finite(const OutputTable& table);
void write_csv(const OutputTable& table, std::ostream& os);

// Exit codes: 0 ok, 2 config / invalid input, 3 numerical failure, 4 no reference.
int exit_code(const std::exception& e);

// Whole front end: argument parsing, config layering, output files.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace specwave::cli

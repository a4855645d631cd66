#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "specwave/catalog.hpp"
#include "specwave/cli.hpp"
#include "specwave/errors.hpp"

namespace specwave::cli {

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void check_finite(const OutputTable& t) {
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (t.rows[r].size() != t.columns.size())
      throw NumericalFailure("output row " + std::to_string(r) + " has " +
                             std::to_string(t.rows[r].size()) + " cells for " +
                             std::to_string(t.columns.size()) + " columns");
    for (std::size_t c = 0; c < t.rows[r].size(); ++c)
      if (!std::isfinite(t.rows[r][c]))
        throw NumericalFailure("non-finite value in row " + std::to_string(r) + ", column '" +
                               t.columns[c] + "'");
  }
}

void write_csv(const OutputTable& t, std::ostream& os) {
  os << "# specwave " << version << '\n';
  for (const auto& [k, v] : t.header) os << "# " << k << '=' << v << '\n';
  for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_number(row[c]);
    os << '\n';
  }
}

int exit_code(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const InvalidArgument*>(&e)) return 2;
  if (dynamic_cast<const NoReferenceAvailable*>(&e)) return 4;
  if (dynamic_cast<const NumericalFailure*>(&e)) return 3;
  return 1;
}

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string catalog_footer() {
  auto list = [](const std::vector<std::string>& ids) {
    std::string s;
    for (const auto& id : ids) s += (s.empty() ? "" : ", ") + id;
    return s;
  };
  return "\nFunctions (--f, --phi): " + list(line_function_ids()) +
         "\nStrip profiles: " + list(strip_profile_ids()) +
         "\nPotentials (--potential): " + list(potential_ids()) +
         "\nExit codes: 0 ok, 2 config, 3 numerical failure, 4 no reference available.";
}

}  // namespace

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wave-packet eigenfunctions and smoothed spectral measures"};
  app.footer(catalog_footer());
  app.require_subcommand(1);

  std::map<std::string, std::string> flags;
  std::map<std::string, CLI::Option*> options;
  const std::map<std::string, std::string> help = {
      {"operator", "multiplication | rank_one | free_laplacian | schrodinger | strip"},
      {"m", "kernel order(s), comma list"},
      {"eps", "smoothing parameter(s), comma list or lo:hi:count"},
      {"lambda", "spectral point(s), comma list or lo:hi:count"},
      {"f", "function id"},
      {"phi", "test function id (weak mode)"},
      {"potential", "potential id (schrodinger)"},
      {"L", "half-width of the x grid"},
      {"n", "grid nodes (or kernel samples)"},
      {"kmax", "Fourier cutoff"},
      {"nk", "Fourier nodes"},
      {"ny", "transverse modes (strip)"},
      {"mode", "converge error: weak | sup"},
      {"window", "x window lo,hi"},
      {"out", "CSV path; a JSON sidecar goes to <out>.json"}};
  for (const auto& key : setting_keys())
    options[key] = app.add_option("--" + key, flags[key], help.at(key));
  std::string config_path;
  app.add_option("--config", config_path, "key=value file; flags override it");

  std::map<std::string, Command> commands = {{"kernel", Command::kernel},
                                             {"eigenfunction", Command::eigenfunction},
                                             {"measure", Command::measure},
                                             {"converge", Command::converge}};
  const std::map<std::string, std::string> about = {
      {"kernel", "kernel samples and moment report"},
      {"eigenfunction", "wave packet on the operator grid"},
      {"measure", "smoothed spectral density over a lambda grid"},
      {"converge", "error sweep over eps with fitted slopes"}};
  for (const auto& [name, _] : commands) app.add_subcommand(name, about.at(name))->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const Command command = commands.at(app.get_subcommands().front()->get_name());
    SettingMap file, given;
    if (!config_path.empty()) file = read_config_file(config_path);
    for (const auto& [key, opt] : options)
      if (opt->count() > 0) given[key] = {flags[key], "--" + key};
    const RunConfig cfg = resolve_config(command, {file, given});

    OutputTable table = run(cfg);
    check_finite(table);
    for (const auto& w : table.warnings) err << "warning: " << w << '\n';

    if (cfg.out.empty()) {
      write_csv(table, out);
      return 0;
    }
    std::ofstream csv(cfg.out);
    if (!csv) throw ConfigError("cannot write '" + cfg.out + "'");
    write_csv(table, csv);

    nlohmann::json meta = table.sidecar;
    meta["version"] = version;
    meta["timestamp"] = utc_timestamp();
    meta["columns"] = table.columns;
    meta["warnings"] = table.warnings;
    nlohmann::json echo = nlohmann::json::object();
    for (const auto& [k, v] : table.header) echo[k] = v;
    meta["config"] = echo;
    std::ofstream side(cfg.out + ".json");
    if (!side) throw ConfigError("cannot write '" + cfg.out + ".json'");
    side << meta.dump(2) << '\n';
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e);
  }
}

}  // namespace specwave::cli

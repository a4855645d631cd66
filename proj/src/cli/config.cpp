#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "specwave/catalog.hpp"
#include "specwave/cli.hpp"
#include "specwave/errors.hpp"
#include "specwave/operators.hpp"
#include "specwave/wavepacket.hpp"

namespace specwave::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

[[noreturn]] void bad(const std::string& key, const Setting& s, const std::string& why) {
  throw ConfigError("field '" + key + "' (" + s.origin + "): " + why);
}

double to_double(const std::string& key, const Setting& s, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    bad(key, s, "'" + text + "' is not a number");
  }
  if (used != text.size() || !std::isfinite(v)) bad(key, s, "'" + text + "' is not a finite number");
  return v;
}

int to_int(const std::string& key, const Setting& s, const std::string& text) {
  const double v = to_double(key, s, text);
  if (v != std::floor(v) || std::abs(v) > 1e9) bad(key, s, "'" + text + "' is not an integer");
  return static_cast<int>(v);
}

// "a,b,c" or "lo:hi:count" (inclusive, evenly spaced).
std::vector<double> to_list(const std::string& key, const Setting& s) {
  std::vector<double> out;
  if (s.value.find(':') != std::string::npos) {
    const auto parts = split(s.value, ':');
    if (parts.size() != 3) bad(key, s, "range must be lo:hi:count");
    const double lo = to_double(key, s, parts[0]), hi = to_double(key, s, parts[1]);
    const int count = to_int(key, s, parts[2]);
    if (count < 1) bad(key, s, "range count must be positive");
    if (count == 1) return {lo};
    for (int i = 0; i < count; ++i) out.push_back(lo + (hi - lo) * i / (count - 1));
    return out;
  }
  for (const auto& p : split(s.value, ',')) {
    if (p.empty()) bad(key, s, "empty list entry");
    out.push_back(to_double(key, s, p));
  }
  if (out.empty()) bad(key, s, "empty list");
  return out;
}

OperatorKind to_operator(const Setting& s) {
  if (s.value == "multiplication") return OperatorKind::multiplication;
  if (s.value == "rank_one") return OperatorKind::rank_one;
  if (s.value == "free_laplacian") return OperatorKind::free_laplacian;
  if (s.value == "schrodinger") return OperatorKind::schrodinger;
  if (s.value == "strip") return OperatorKind::strip;
  bad("operator", s,
      "unknown operator '" + s.value +
          "' (known: multiplication, rank_one, free_laplacian, schrodinger, strip)");
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : ",") + format_number(x);
  return s;
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::kernel: return "kernel";
    case Command::eigenfunction: return "eigenfunction";
    case Command::measure: return "measure";
    case Command::converge: return "converge";
  }
  return "?";
}

std::string to_string(OperatorKind op) {
  switch (op) {
    case OperatorKind::multiplication: return "multiplication";
    case OperatorKind::rank_one: return "rank_one";
    case OperatorKind::free_laplacian: return "free_laplacian";
    case OperatorKind::schrodinger: return "schrodinger";
    case OperatorKind::strip: return "strip";
  }
  return "?";
}

const std::vector<std::string>& setting_keys() {
  static const std::vector<std::string> keys = {"operator", "m",    "eps",  "lambda", "f",
                                                "phi",      "potential", "L", "n",   "kmax",
                                                "nk",       "ny",   "mode", "window", "out"};
  return keys;
}

SettingMap parse_config_text(const std::string& text, const std::string& source) {
  SettingMap out;
  std::stringstream ss(text);
  std::string line;
  int number = 0;
  const auto& keys = setting_keys();
  while (std::getline(ss, line)) {
    ++number;
    const std::string where = source + ":" + std::to_string(number);
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key=value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    // The echo header carries the subcommand; it is informational here.
    if (key == "command") continue;
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw ConfigError(where + ": unknown key '" + key + "'");
    if (value.empty()) throw ConfigError(where + ": field '" + key + "' has no value");
    if (out.count(key)) throw ConfigError(where + ": field '" + key + "' given twice");
    out[key] = {value, where};
  }
  return out;
}

SettingMap read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

RunConfig resolve_config(Command command, const std::vector<SettingMap>& layers) {
  SettingMap s;
  for (const auto& layer : layers)
    for (const auto& [k, v] : layer) s[k] = v;
  auto has = [&](const char* k) { return s.count(k) > 0; };

  RunConfig c;
  c.command = command;
  c.op = has("operator") ? to_operator(s.at("operator")) : OperatorKind::multiplication;
  const bool line_grid = c.op == OperatorKind::free_laplacian || c.op == OperatorKind::strip;
  const bool cubic = c.op == OperatorKind::multiplication || c.op == OperatorKind::rank_one;

  if (has("mode")) {
    c.mode = s.at("mode").value;
    if (c.mode != "weak" && c.mode != "sup") bad("mode", s.at("mode"), "must be weak or sup");
  }

  // Orders.
  if (has("m")) {
    for (double v : to_list("m", s.at("m"))) {
      if (v != std::floor(v)) bad("m", s.at("m"), "kernel order must be an integer");
      if (v < 1 || v > 12) bad("m", s.at("m"), "kernel order must lie in 1..12");
      c.m.push_back(static_cast<int>(v));
    }
  } else if (command == Command::converge) {
    c.m = c.mode == "sup" ? std::vector<int>{1, 2, 3} : std::vector<int>{1, 3, 5};
  } else {
    c.m = {1};
  }
  if (command == Command::kernel && c.m.size() != 1) bad("m", s.at("m"), "kernel takes one order");

  // Smoothing parameters.
  if (has("eps")) {
    c.eps = to_list("eps", s.at("eps"));
    for (double e : c.eps)
      if (!(e > 0.0)) bad("eps", s.at("eps"), "eps must be positive");
  } else if (command == Command::converge) {
    c.eps = log_spaced(0.0, -3.0);
  } else {
    c.eps = {0.01};
  }

  // Spectral points.
  if (has("lambda")) {
    c.lambda = to_list("lambda", s.at("lambda"));
  } else {
    switch (c.op) {
      case OperatorKind::multiplication:
      case OperatorKind::rank_one:
        if (command == Command::measure) {
          for (int i = 0; i < 161; ++i) c.lambda.push_back(-0.4 + 0.005 * i);
        } else {
          c.lambda = {command == Command::converge ? 0.01 : 0.1};
        }
        break;
      case OperatorKind::free_laplacian:
        if (command == Command::measure) {
          for (int i = 1; i <= 100; ++i) c.lambda.push_back(0.1 * i);
        } else {
          c.lambda = {command == Command::converge ? 0.1 : 1.0};
        }
        break;
      case OperatorKind::schrodinger:
        if (command == Command::measure) {
          for (int i = 1; i <= 40; ++i) c.lambda.push_back(0.5 * i);
        } else {
          c.lambda = {8.0};
        }
        break;
      case OperatorKind::strip:
        if (command == Command::measure) {
          for (int i = 0; i < 60; ++i) c.lambda.push_back(2.5 + 0.25 * i);
        } else {
          c.lambda = {pi * (pi - 1.0)};
        }
        break;
    }
  }
  if ((command == Command::eigenfunction || command == Command::converge) && c.lambda.size() != 1)
    bad("lambda", s.at("lambda"), to_string(command) + " takes a single lambda");
  if (command == Command::eigenfunction && (c.eps.size() != 1 || c.m.size() != 1))
    throw ConfigError("eigenfunction takes a single eps and a single m");

  // Catalog ids.
  const std::string default_f = cubic ? "cos2pi" : c.op == OperatorKind::strip ? "gaussian_strip" : "gaussian";
  const std::string default_phi = cubic ? "cospi" : default_f;
  c.f = has("f") ? s.at("f").value : default_f;
  c.phi = has("phi") ? s.at("phi").value : default_phi;
  for (const char* key : {"f", "phi"}) {
    const std::string& id = key[0] == 'f' ? c.f : c.phi;
    try {
      if (c.op == OperatorKind::strip) {
        strip_profile(id);
      } else {
        line_function(id);
      }
    } catch (const InvalidArgument& e) {
      if (has(key)) bad(key, s.at(key), e.what());
      throw ConfigError(e.what());
    }
  }
  c.potential = has("potential") ? s.at("potential").value : "short_range";
  try {
    potential(c.potential);
  } catch (const InvalidArgument& e) {
    bad("potential", s.at("potential"), e.what());
  }

  // Discretization.
  auto positive = [&](const char* key, double v) {
    if (!(v > 0.0)) bad(key, s.at(key), "must be positive");
    return v;
  };
  if (command == Command::kernel) {
    c.L = 10.0;  // sample window half-width
    c.n = 401;
  } else if (c.op == OperatorKind::schrodinger) {
    c.L = 60.0;
    c.n = 6000;
  } else if (line_grid) {
    c.L = 10.0;
    c.n = 400;
  } else {
    c.L = 1.0;  // fixed by the operator
    c.n = 2000;
  }
  if (has("L")) c.L = positive("L", to_double("L", s.at("L"), s.at("L").value));
  if (has("n")) {
    c.n = to_int("n", s.at("n"), s.at("n").value);
    if (c.n < 2) bad("n", s.at("n"), "need at least 2 nodes");
  }
  if (has("kmax")) c.k_max = positive("kmax", to_double("kmax", s.at("kmax"), s.at("kmax").value));
  if (has("nk")) {
    c.n_k = to_int("nk", s.at("nk"), s.at("nk").value);
    if (c.n_k < 16) bad("nk", s.at("nk"), "need at least 16 k nodes");
  }
  if (has("ny")) {
    c.n_y = to_int("ny", s.at("ny"), s.at("ny").value);
    if (c.n_y < 1) bad("ny", s.at("ny"), "need at least one transverse mode");
  }

  if (has("window")) {
    const auto w = to_list("window", s.at("window"));
    if (w.size() != 2 || !(w[0] < w[1])) bad("window", s.at("window"), "expected lo,hi with lo < hi");
    c.window = Interval{w[0], w[1]};
  } else if (command == Command::kernel || (command == Command::converge && c.mode == "sup")) {
    c.window = Interval{-10.0, 10.0};
  }
  if (has("out")) c.out = s.at("out").value;
  return c;
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> e;
  e.emplace_back("command", to_string(command));
  e.emplace_back("operator", to_string(op));
  std::string ms;
  for (int k : m) ms += (ms.empty() ? "" : ",") + std::to_string(k);
  e.emplace_back("m", ms);
  e.emplace_back("eps", join(eps));
  e.emplace_back("lambda", join(lambda));
  e.emplace_back("f", f);
  e.emplace_back("phi", phi);
  e.emplace_back("potential", potential);
  e.emplace_back("L", format_number(L));
  e.emplace_back("n", std::to_string(n));
  e.emplace_back("kmax", format_number(k_max));
  e.emplace_back("nk", std::to_string(n_k));
  e.emplace_back("ny", std::to_string(n_y));
  e.emplace_back("mode", mode);
  if (window) e.emplace_back("window", format_number(window->lo) + "," + format_number(window->hi));
  return e;
}

}  // namespace specwave::cli

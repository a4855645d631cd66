#include "specwave/catalog.hpp"

#include <cmath>
#include <map>

#include "specwave/errors.hpp"

namespace specwave {

namespace {

TransformFunction gaussian_transform() {
  return [](double k) { return cplx(std::exp(-pi * k * k)); };
}

const std::map<std::string, LineFunction>& line_table() {
  static const std::map<std::string, LineFunction> table = {
      {"cos2pi",
       {"cos2pi", "(2+x)cos(2 pi x)", [](double x) { return (2.0 + x) * std::cos(2.0 * pi * x); }, {}}},
      {"cospi", {"cospi", "(1+x)cos(pi x)", [](double x) { return (1.0 + x) * std::cos(pi * x); }, {}}},
      {"gaussian",
       {"gaussian", "exp(-pi x^2)", [](double x) { return std::exp(-pi * x * x); }, gaussian_transform()}},
  };
  return table;
}

const std::map<std::string, StripProfile>& strip_table() {
  static const std::map<std::string, StripProfile> table = {
      {"gaussian_strip",
       {"gaussian_strip", "exp(-pi x^2)(1-y^2)exp(y)", line_table().at("gaussian"),
        [](double y) { return (1.0 - y * y) * std::exp(y); }}},
      {"gaussian_mode1",
       {"gaussian_mode1", "exp(-pi x^2)cos(pi y/2)", line_table().at("gaussian"),
        [](double y) { return std::cos(pi * y / 2.0); }}},
  };
  return table;
}

const std::map<std::string, Potential>& potential_table() {
  static const std::map<std::string, Potential> table = {
      {"zero", {"zero", "0", [](double) { return 0.0; }}},
      {"short_range",
       {"short_range", "-5cos(x/2)exp(-x^2/32)",
        [](double x) { return -5.0 * std::cos(x / 2.0) * std::exp(-x * x / 32.0); }}},
      {"long_range", {"long_range", "-10/(2+x^2)", [](double x) { return -10.0 / (2.0 + x * x); }}},
  };
  return table;
}

template <class Table>
const auto& lookup(const Table& table, const std::string& id, const char* what) {
  auto it = table.find(id);
  if (it == table.end()) {
    std::string known;
    for (const auto& [k, _] : table) known += (known.empty() ? "" : ", ") + k;
    throw InvalidArgument(std::string("unknown ") + what + " '" + id + "' (known: " + known + ")");
  }
  return it->second;
}

template <class Table>
std::vector<std::string> keys(const Table& table) {
  std::vector<std::string> out;
  for (const auto& [k, _] : table) out.push_back(k);
  return out;
}

}  // namespace

const LineFunction& line_function(const std::string& id) {
  return lookup(line_table(), id, "function");
}

const StripProfile& strip_profile(const std::string& id) {
  return lookup(strip_table(), id, "strip function");
}

const Potential& potential(const std::string& id) { return lookup(potential_table(), id, "potential"); }

std::vector<std::string> line_function_ids() { return keys(line_table()); }
std::vector<std::string> strip_profile_ids() { return keys(strip_table()); }
std::vector<std::string> potential_ids() { return keys(potential_table()); }

GridFunction sample(const LineFunction& f, RulePtr rule) {
  std::optional<FourierTransform> t;
  if (f.transform) t = FourierTransform{*f.transform, {}};
  auto fn = f.f;
  return GridFunction::sample(std::move(rule), [fn](double x) { return cplx(fn(x)); }, std::move(t));
}

StripGridFunction sample(const StripProfile& f, RulePtr x_rule, int n_modes) {
  return StripGridFunction::separable(sample(f.x_part, std::move(x_rule)), f.y_part, n_modes);
}

std::vector<TransformFunction> strip_mode_transforms(const StripProfile& f, int n_modes) {
  if (!f.x_part.transform) throw NoReferenceAvailable("strip profile without an x-transform");
  const QuadratureRule y = gauss_legendre(std::max(128, 8 * n_modes), -1.0, 1.0, Execution::serial);
  std::vector<TransformFunction> out;
  for (int n = 1; n <= n_modes; ++n) {
    double c = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
      c += y.weights[i] * f.y_part(y.nodes[i]) * transverse_mode(n, y.nodes[i]);
    auto t = *f.x_part.transform;
    out.push_back([t, c](double k) { return c * t(k); });
  }
  return out;
}

}  // namespace specwave

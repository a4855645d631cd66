#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specwave/grid.hpp"
#include "specwave/measures.hpp"

namespace specwave {

// Built-in test functions and potentials, referenced by id from the CLI.
struct LineFunction {
  std::string id;
  std::string formula;
  RealFunction f;
  std::optional<TransformFunction> transform;
};

struct StripProfile {
  std::string id;
  std::string formula;
  LineFunction x_part;  // f(x, y) = x_part(x) * y_part(y)
  RealFunction y_part;
};

struct Potential {
  std::string id;
  std::string formula;
  RealFunction v;
};

const LineFunction& line_function(const std::string& id);
const StripProfile& strip_profile(const std::string& id);
const Potential& potential(const std::string& id);

std::vector<std::string> line_function_ids();
std::vector<std::string> strip_profile_ids();
std::vector<std::string> potential_ids();

GridFunction sample(const LineFunction& f, RulePtr rule);
StripGridFunction sample(const StripProfile& f, RulePtr x_rule, int n_modes);

// x-transforms of the transverse coefficients of a separable profile.
std::vector<TransformFunction> strip_mode_transforms(const StripProfile& f, int n_modes);

}  // namespace specwave

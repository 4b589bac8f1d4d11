#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pwk/field/models.hpp"

namespace pwk::field {

struct Scenario {
  std::string name;
  std::string description;
  PiecewiseKolmogorovSystem system;
  bool smooth = false;
  /// Monodromic point of interest, if any.
  std::optional<Point> focus;
  /// (k, n, e) + knobs form, when the system comes from the monodromy conditions.
  std::optional<WeakFocusFamily> family;
  std::array<double, 4> bbox{0.0, 2.0, 0.0, 2.0};  // x0, x1, y0, y1
  std::vector<std::array<double, 2>> seeds;
  double portrait_time = 30.0;
};

std::vector<std::string> scenario_names();
/// Throws InvalidArgument for unknown names.
Scenario make_scenario(std::string_view name);

/// Parameter sets used by several presets.
WeakFocusFamily unstable_order_three_family();
WeakFocusFamily stable_order_three_family();
WeakFocusFamily sigma_center_family();
WeakFocusFamily continuous_family();

}  // namespace pwk::field

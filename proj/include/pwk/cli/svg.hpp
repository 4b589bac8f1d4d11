#pragma once

#include <string>
#include <vector>

#include "pwk/field/scenarios.hpp"
#include "pwk/flow/integrator.hpp"

namespace pwk::cli {

inline constexpr const char* kVersion = "0.1.0";

struct PortraitStyle {
  int width = 720;
  int height = 720;
  int nullcline_grid = 160;
  int sigma_samples = 600;
};

/// Self-contained SVG: orbits, separation line, nullclines, equilibria, sliding segments.
/// Throws InvalidArgument when no orbit has at least two samples.
std::string render_portrait(const field::Scenario& sc, const std::vector<flow::Trajectory>& orbits,
                            const PortraitStyle& style = {});

}  // namespace pwk::cli

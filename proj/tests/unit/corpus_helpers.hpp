#pragma once

#include <cmath>

#include "besov/grid_function.hpp"

namespace testing_support {

inline besov::GridFunction indicator_1d(double spacing, double padding = 2.5) {
  return besov::GridFunction::sample([](std::span<const double>) { return 1.0; }, besov::Box{{0.0}, {1.0}},
                                     {spacing}, {padding});
}

inline besov::GridFunction bump_1d(double spacing, double padding = 2.5) {
  return besov::GridFunction::sample(
      [](std::span<const double> x) {
        const double r = x[0];
        return std::fabs(r) < 1.0 ? std::exp(-1.0 / (1.0 - r * r)) : 0.0;
      },
      besov::Box{{-1.0}, {1.0}}, {spacing}, {padding});
}

inline besov::GridFunction box_2d(double spacing, double padding = 2.0) {
  return besov::GridFunction::sample([](std::span<const double>) { return 1.0; },
                                     besov::Box{{0.0, 0.0}, {1.0, 1.0}}, {spacing, spacing}, {padding, padding});
}

}  // namespace testing_support

namespace testing_support {

inline besov::GridFunction cusp_1d(double spacing, double padding = 2.5) {
  return besov::GridFunction::sample([](std::span<const double> x) { return 1.0 / std::sqrt(std::fabs(x[0])); },
                                     besov::Box{{-1.0}, {1.0}}, {spacing}, {padding});
}

}  // namespace testing_support

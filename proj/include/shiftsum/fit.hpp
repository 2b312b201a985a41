#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace shiftsum {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  std::size_t points = 0;
};

// Ordinary least squares y = intercept + slope x. Needs >= 2 points with distinct x.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

// Slope of log(value) against log(X) with its standard error. Needs >= 3 points, values > 0.
LinearFit fit_exponent(std::span<const std::pair<double, double>> points);

double median(std::vector<double> values);

}  // namespace shiftsum

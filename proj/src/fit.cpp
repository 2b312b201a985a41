#include "shiftsum/fit.hpp"

#include <algorithm>
#include <cmath>

#include "shiftsum/error.hpp"

namespace shiftsum {

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ConfigError("least_squares: size mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw ConfigError("least_squares: need at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw ConfigError("least_squares: all x values coincide");
  LinearFit fit;
  fit.points = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (n > 2) {
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - fit.intercept - fit.slope * x[i];
      ss += r * r;
    }
    fit.slope_stderr = std::sqrt(ss / static_cast<double>(n - 2) / sxx);
  }
  return fit;
}

LinearFit fit_exponent(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw ConfigError("fit_exponent: need at least three points");
  std::vector<double> lx, ly;
  for (const auto& [x, v] : points) {
    if (!(x > 0.0) || !(v > 0.0))
      throw ConfigError("fit_exponent: scales and values must be positive");
    lx.push_back(std::log(x));
    ly.push_back(std::log(v));
  }
  return least_squares(lx, ly);
}

double median(std::vector<double> values) {
  if (values.empty()) throw ConfigError("median of empty set");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + mid);
  return 0.5 * (lower + upper);
}

}  // namespace shiftsum

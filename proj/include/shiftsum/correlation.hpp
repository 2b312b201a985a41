#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shiftsum/value_table.hpp"

namespace shiftsum {

enum class CorrelationMethod { Fft, Naive };

std::string to_string(CorrelationMethod m);
CorrelationMethod parse_correlation_method(const std::string& text);

// sums[h] = Σ_{X <= n <= 2X} f(n) f(n + h) for 0 <= h <= H.
struct CorrelationResult {
  std::int64_t x = 0;
  std::int64_t h = 0;
  std::vector<double> sums;
  CorrelationMethod method = CorrelationMethod::Naive;
};

// Both need the table to cover [X, 2X + H].
CorrelationResult correlate_naive(const ValueTable& table, std::int64_t x, std::int64_t big_h);
CorrelationResult correlate_fft(const ValueTable& table, std::int64_t x, std::int64_t big_h);
CorrelationResult correlate(const ValueTable& table, std::int64_t x, std::int64_t big_h,
                            CorrelationMethod method);

inline constexpr std::size_t kMaxCorrelationLength = std::size_t{1} << 27;

}  // namespace shiftsum

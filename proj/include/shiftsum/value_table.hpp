#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "shiftsum/family.hpp"

namespace shiftsum {

struct SieveLimits {
  std::int64_t max_hi = 100'000'000;
  std::int64_t max_hi_hecke = 1'000'000;
  // Ranges ending above this are sieved segment by segment.
  std::int64_t segment_threshold = 10'000'000;
  std::int64_t segment_length = 1 << 20;
};

// g(n) and f(n) = (g * 1)(n) over n in [lo, hi).
struct ValueTable {
  std::int64_t lo = 1;
  std::int64_t hi = 1;
  std::vector<double> g_vals;
  std::vector<double> f_vals;
  FamilySpec family;

  std::size_t size() const { return g_vals.size(); }
  bool covers(std::int64_t first, std::int64_t last_inclusive) const {
    return first >= lo && last_inclusive < hi && first <= last_inclusive;
  }
  double g(std::int64_t n) const { return g_vals[static_cast<std::size_t>(n - lo)]; }
  double f(std::int64_t n) const { return f_vals[static_cast<std::size_t>(n - lo)]; }
  // f over [first, last_inclusive].
  std::span<const double> f_slice(std::int64_t first, std::int64_t last_inclusive) const;
  std::span<const double> g_slice(std::int64_t first, std::int64_t last_inclusive) const;
};

void check_range(const FamilySpec& family, std::int64_t lo, std::int64_t hi,
                 const SieveLimits& limits = {});

// g(n) for n in [lo, hi).
std::vector<double> sieve_g(const FamilySpec& family, std::int64_t lo, std::int64_t hi,
                            const SieveLimits& limits = {});

// f(n) = Σ_{d|n} g(d) for 1 <= n < 1 + g.size(); g[i] is g(lo + i) and lo must be 1.
std::vector<double> convolve_with_one(std::span<const double> g, std::int64_t lo = 1);

ValueTable build_value_table(const FamilySpec& family, std::int64_t lo, std::int64_t hi,
                             const SieveLimits& limits = {});

// Multiplicative sieve for f over [lo, hi) without materializing [1, lo).
// Integer families only.
ValueTable build_value_table_segmented(const FamilySpec& family, std::int64_t lo,
                                       std::int64_t hi, const SieveLimits& limits = {});

// Binary cache: six little-endian 64-bit header words
//   magic, family kind, D, k, lo, hi
// followed by (hi - lo) little-endian doubles for g, then (hi - lo) for f.
inline constexpr std::uint64_t kValueTableMagic = 0x31305456'4d555353ULL;  // "SSUMVT01"

void save_value_table(const ValueTable& table, const std::filesystem::path& path);
ValueTable load_value_table(const std::filesystem::path& path);
std::filesystem::path cache_path(const std::filesystem::path& dir, const FamilySpec& family,
                                 std::int64_t lo, std::int64_t hi);

// Reuses a cached table from `cache_dir` when present; writes one otherwise.
// An empty cache_dir disables caching.
ValueTable load_or_build(const FamilySpec& family, std::int64_t lo, std::int64_t hi,
                         const std::filesystem::path& cache_dir, const SieveLimits& limits = {});

}  // namespace shiftsum

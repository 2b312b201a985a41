#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

#include "doctest.h"
#include "shiftsum/arith.hpp"
#include "shiftsum/error.hpp"
#include "shiftsum/value_table.hpp"

using namespace shiftsum;

namespace {

double brute_f(const FamilySpec& fam, const std::vector<double>& g, std::int64_t n) {
  (void)fam;
  double s = 0.0;
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0) s += g[static_cast<std::size_t>(d - 1)];
  return s;
}

std::filesystem::path temp_dir(const char* name) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST_SUITE("value_table") {
  TEST_CASE("sieve_g examples") {
    CHECK(sieve_g(FamilySpec::unit(), 1, 6) == std::vector<double>{1, 1, 1, 1, 1});
    CHECK(sieve_g(FamilySpec::real_character(-4), 1, 6) == std::vector<double>{1, 0, -1, 0, 1});
    const auto h = sieve_g(FamilySpec::hecke_delta(), 2, 3);
    REQUIRE(h.size() == 1);
    CHECK(h[0] == doctest::Approx(-0.530330).epsilon(1e-6));
    CHECK(h[0] == doctest::Approx(-24.0 / std::pow(2.0, 5.5)).epsilon(1e-15));
  }

  TEST_CASE("sieve_g errors") {
    FamilySpec bad = FamilySpec::real_character(-4);
    bad.discriminant = 0;
    CHECK_THROWS_AS(sieve_g(bad, 1, 10), ConfigError);
    CHECK_THROWS_AS(sieve_g(FamilySpec::unit(), 5, 5), ConfigError);
    CHECK_THROWS_AS(sieve_g(FamilySpec::unit(), 0, 5), ConfigError);
    SieveLimits small;
    small.max_hi = 1000;
    CHECK_THROWS_AS(sieve_g(FamilySpec::unit(), 1, 1001, small), CapExceeded);
    CHECK_THROWS_AS(sieve_g(FamilySpec::hecke_delta(), 1, 1'000'001), CapExceeded);
  }

  TEST_CASE("convolve_with_one examples") {
    const auto g_unit = sieve_g(FamilySpec::unit(), 1, 20);
    CHECK(convolve_with_one(g_unit)[5] == 4);  // d_2(6)
    const auto g = sieve_g(FamilySpec::real_character(-4), 1, 20);
    const auto f = convolve_with_one(g);
    CHECK(f[4] == 2);  // f(5)
    CHECK(f[8] == 1);  // f(9)
    CHECK_THROWS_AS(convolve_with_one(g, 2), ConfigError);
  }

  TEST_CASE("f matches divisor enumeration") {
    for (const auto& fam : {FamilySpec::unit(), FamilySpec::real_character(-4),
                            FamilySpec::real_character(5), FamilySpec::hecke_delta()}) {
      const auto t = build_value_table(fam, 1, 400);
      for (std::int64_t n = 1; n < 400; ++n)
        CHECK(t.f(n) == doctest::Approx(brute_f(fam, t.g_vals, n)).epsilon(1e-13));
    }
  }

  TEST_CASE("sliced tables agree with full tables") {
    const auto fam = FamilySpec::real_character(-4);
    const auto full = build_value_table(fam, 1, 5000);
    const auto part = build_value_table(fam, 3000, 5000);
    CHECK(part.size() == 2000);
    for (std::int64_t n = 3000; n < 5000; ++n) {
      CHECK(part.g(n) == full.g(n));
      CHECK(part.f(n) == full.f(n));
    }
    CHECK(part.covers(3000, 4999));
    CHECK_FALSE(part.covers(2999, 4000));
    CHECK_FALSE(part.covers(3000, 5000));
    CHECK_THROWS_AS(part.f_slice(10, 20), ConfigError);
  }

  TEST_CASE("segmented sieve is bit-identical to the dense sieve") {
    SieveLimits lim;
    lim.segment_length = 997;
    for (const auto& fam : {FamilySpec::unit(), FamilySpec::real_character(-4),
                            FamilySpec::real_character(-20), FamilySpec::real_character(12)}) {
      const auto dense = build_value_table(fam, 1, 60000);
      const auto seg = build_value_table_segmented(fam, 40000, 60000, lim);
      for (std::int64_t n = 40000; n < 60000; ++n) {
        REQUIRE(seg.g(n) == dense.g(n));
        REQUIRE(seg.f(n) == dense.f(n));
      }
      const auto seg1 = build_value_table_segmented(fam, 1, 3000, lim);
      for (std::int64_t n = 1; n < 3000; ++n) REQUIRE(seg1.f(n) == dense.f(n));
    }
    lim.segment_threshold = 50000;
    const auto auto_seg = build_value_table(FamilySpec::unit(), 45000, 70000, lim);
    const auto d2 = divisor_k(2, 45000, 70000);
    for (std::int64_t n = 45000; n < 70000; ++n)
      REQUIRE(auto_seg.f(n) == static_cast<double>(d2[static_cast<std::size_t>(n - 45000)]));
    CHECK_THROWS_AS(build_value_table_segmented(FamilySpec::hecke_delta(), 10, 100), ConfigError);
  }

  TEST_CASE("values are exact integers and respect the divisor bounds") {
    constexpr std::int64_t n_max = 100000;
    const auto d2 = divisor_k(2, 1, n_max);
    const auto d3 = divisor_k(3, 1, n_max);
    for (const auto& fam : {FamilySpec::unit(), FamilySpec::real_character(-4),
                            FamilySpec::real_character(-3), FamilySpec::hecke_delta()}) {
      const auto t = build_value_table(fam, 1, n_max);
      const auto& gk = fam.degree_k == 1 ? d2 : d3;  // d_{k+1}
      for (std::int64_t n = 1; n < n_max; ++n) {
        const auto i = static_cast<std::size_t>(n - 1);
        const double dk = fam.degree_k == 1 ? 1.0 : static_cast<double>(d2[i]);
        REQUIRE(std::abs(t.g(n)) <= dk * (1 + 1e-12));
        REQUIRE(std::abs(t.f(n)) <= static_cast<double>(gk[i]) * (1 + 1e-12));
        if (fam.integer_valued()) {
          REQUIRE(t.f(n) == std::nearbyint(t.f(n)));
          REQUIRE(t.g(n) == std::nearbyint(t.g(n)));
        }
      }
    }
  }

  TEST_CASE("multiplicativity on random coprime pairs") {
    constexpr std::int64_t n_max = 200000;
    std::mt19937_64 rng(11);
    for (const auto& fam : {FamilySpec::unit(), FamilySpec::real_character(-4),
                            FamilySpec::real_character(5), FamilySpec::hecke_delta()}) {
      const auto t = build_value_table(fam, 1, n_max);
      int tested = 0;
      while (tested < 1000) {
        const std::int64_t m = 1 + static_cast<std::int64_t>(rng() % 450);
        const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 440);
        if (std::gcd(m, n) != 1 || m * n >= n_max) continue;
        ++tested;
        if (fam.integer_valued()) {
          REQUIRE(t.f(m * n) == t.f(m) * t.f(n));
          REQUIRE(t.g(m * n) == t.g(m) * t.g(n));
        } else {
          const double prod = t.f(m) * t.f(n);
          REQUIRE(std::abs(t.f(m * n) - prod) <= 1e-12 * std::max(1.0, std::abs(prod)));
        }
      }
    }
  }

  TEST_CASE("binary cache round trip") {
    const auto dir = temp_dir("shiftsum_cache_test");
    const auto fam = FamilySpec::real_character(-4);
    const auto t = build_value_table(fam, 100, 900);
    const auto path = cache_path(dir, fam, 100, 900);
    save_value_table(t, path);
    CHECK(std::filesystem::file_size(path) == 6 * 8 + 2 * 800 * 8);
    const auto back = load_value_table(path);
    CHECK(back.lo == 100);
    CHECK(back.hi == 900);
    CHECK(back.family == fam);
    CHECK(back.g_vals == t.g_vals);
    CHECK(back.f_vals == t.f_vals);

    const auto via_cache = load_or_build(fam, 100, 900, dir);
    CHECK(via_cache.f_vals == t.f_vals);
    const auto hecke = load_or_build(FamilySpec::hecke_delta(), 1, 500, dir);
    const auto hecke2 = load_or_build(FamilySpec::hecke_delta(), 1, 500, dir);
    CHECK(hecke.f_vals == hecke2.f_vals);

    std::ofstream(dir / "junk.bin") << "not a table";
    CHECK_THROWS_AS(load_value_table(dir / "junk.bin"), ConfigError);
    std::filesystem::remove_all(dir);
  }
}

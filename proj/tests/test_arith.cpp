#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>

#include "doctest.h"
#include "shiftsum/arith.hpp"
#include "shiftsum/error.hpp"
#include "shiftsum/family.hpp"
#include "shiftsum/hecke.hpp"

using namespace shiftsum;

namespace {

// Σ_{1<=a<=q, (a,q)=1} e(ah/q), real part
double direct_ramanujan(std::int64_t q, std::int64_t h) {
  double s = 0.0;
  for (std::int64_t a = 1; a <= q; ++a)
    if (std::gcd(a, q) == 1)
      s += std::cos(2.0 * std::numbers::pi * static_cast<double>((a * h) % q) /
                    static_cast<double>(q));
  return s;
}

std::int64_t brute_dk(int k, std::int64_t n) {
  if (k == 1) return 1;
  std::int64_t s = 0;
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0) s += brute_dk(k - 1, n / d);
  return s;
}

}  // namespace

TEST_SUITE("arith") {
  TEST_CASE("factorization and primes") {
    CHECK(factorize(1).empty());
    const auto f = factorize(360);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == PrimePower{2, 3});
    CHECK(f[1] == PrimePower{3, 2});
    CHECK(f[2] == PrimePower{5, 1});
    CHECK(primes_below(30) == std::vector<std::int64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
    CHECK(is_perfect_square(49));
    CHECK_FALSE(is_perfect_square(50));
  }

  TEST_CASE("mobius and phi tables") {
    const auto t = mobius_phi_tables(31);
    CHECK(t.mu[1] == 1);
    CHECK(t.phi[1] == 1);
    CHECK(t.mu[12] == 0);
    CHECK(t.phi[12] == 4);
    CHECK(t.mu[30] == -1);
    CHECK(t.phi[30] == 8);
    const auto big = mobius_phi_tables(2000);
    for (std::int64_t n = 1; n < 2000; ++n) {
      CHECK(big.mu[static_cast<std::size_t>(n)] == mobius(n));
      CHECK(big.phi[static_cast<std::size_t>(n)] == euler_phi(n));
    }
  }

  TEST_CASE("kronecker symbol") {
    const int expect[] = {1, 0, -1, 0, 1, 0, -1, 0};
    for (int n = 1; n <= 8; ++n) CHECK(kronecker(-4, n) == expect[n - 1]);
    // (5|n) depends on n mod 5: 1, -1, -1, 1, 0
    const int five[] = {1, -1, -1, 1, 0};
    for (int n = 1; n <= 40; ++n) CHECK(kronecker(5, n) == five[(n - 1) % 5]);
    // complete multiplicativity in n
    for (std::int64_t d : {-4, -3, 5, 8, -7, 12, -20})
      for (int m = 1; m < 40; ++m)
        for (int n = 1; n < 40; ++n)
          CHECK(kronecker(d, m * n) == kronecker(d, m) * kronecker(d, n));
  }

  TEST_CASE("ramanujan sum examples") {
    for (std::int64_t h : {-5, 0, 1, 7, 100}) CHECK(ramanujan_sum(1, h) == 1);
    for (std::int64_t q = 1; q < 50; ++q) CHECK(ramanujan_sum(q, 0) == euler_phi(q));
    CHECK(ramanujan_sum(6, 3) == -2);
  }

  TEST_CASE("ramanujan sum closed form matches the exponential sum") {
    for (std::int64_t q = 1; q <= 200; ++q)
      for (std::int64_t h = 1; h <= 200; ++h) {
        const auto c = ramanujan_sum(q, h);
        REQUIRE(std::llround(direct_ramanujan(q, h)) == c);
        CHECK(std::abs(c) <= std::gcd(q, h));
      }
  }

  TEST_CASE("divisor sum of ramanujan sums") {
    for (std::int64_t q = 1; q <= 100; ++q)
      for (std::int64_t h = 1; h <= 100; ++h) {
        std::int64_t s = 0;
        for (std::int64_t d = 1; d <= q; ++d)
          if (q % d == 0) s += ramanujan_sum(d, h);
        CHECK(s == (h % q == 0 ? q : 0));
      }
  }

  TEST_CASE("divisor functions") {
    CHECK(divisor_k(2, 1, 2)[0] == 1);
    CHECK(divisor_k(3, 4, 5)[0] == 6);
    CHECK(divisor_k(2, 12, 13)[0] == 6);
    for (int k = 1; k <= 4; ++k) {
      const auto d = divisor_k(k, 1, 120);
      for (std::int64_t n = 1; n < 120; ++n)
        CHECK(d[static_cast<std::size_t>(n - 1)] == static_cast<std::uint64_t>(brute_dk(k, n)));
    }
    const auto mid = divisor_k(3, 500, 600);
    const auto full = divisor_k(3, 1, 600);
    for (std::size_t i = 0; i < mid.size(); ++i) CHECK(mid[i] == full[499 + i]);
    for (int k = 1; k <= 4; ++k)
      for (int e = 0; e <= 6; ++e)
        CHECK(divisor_k_prime_power(k, e) ==
              static_cast<double>(brute_dk(k, static_cast<std::int64_t>(std::pow(2, e)))));
    for (std::int64_t n = 1; n < 300; ++n) CHECK(divisor_count(n) == brute_dk(2, n));
  }

  TEST_CASE("family specs") {
    const auto u = FamilySpec::unit();
    CHECK(u.degree_k == 1);
    CHECK(u.has_pole_at_one);
    const auto c = FamilySpec::real_character(-4);
    CHECK(c.degree_k == 1);
    CHECK_FALSE(c.has_pole_at_one);
    const auto d = FamilySpec::hecke_delta();
    CHECK(d.degree_k == 2);
    CHECK_FALSE(d.has_pole_at_one);
    for (const auto& f : {u, c, d, FamilySpec::real_character(5)})
      CHECK(FamilySpec::parse(f.to_string()) == f);
    CHECK(FamilySpec::parse("character:-4") == c);
    CHECK(FamilySpec::parse("hecke") == d);
    CHECK_THROWS_AS(FamilySpec::real_character(0), ConfigError);
    CHECK_THROWS_AS(FamilySpec::parse("kronecker:0"), ConfigError);
    CHECK_THROWS_AS(FamilySpec::parse("kronecker:9"), ConfigError);
    CHECK_THROWS_AS(FamilySpec::parse("zeta"), ConfigError);
    CHECK_THROWS_AS(FamilySpec::parse("kronecker:abc"), ConfigError);
  }

  TEST_CASE("ramanujan tau") {
    const auto tau = ramanujan_tau(11);
    const long long expect[] = {0, 1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920};
    for (int n = 0; n <= 10; ++n) CHECK(static_cast<long long>(tau[static_cast<std::size_t>(n)]) == expect[n]);
    CHECK(normalized_tau(tau[2], 2) == doctest::Approx(-24.0 / std::pow(2.0, 5.5)).epsilon(1e-15));
  }

  TEST_CASE("tau: multiplicativity, hecke relation and deligne bound") {
    constexpr std::int64_t n_max = 20000;
    const auto tau = ramanujan_tau(n_max);
    const auto t = [&](std::int64_t n) { return tau[static_cast<std::size_t>(n)]; };
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
      const std::int64_t m = 1 + static_cast<std::int64_t>(rng() % 140);
      const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 140);
      if (std::gcd(m, n) != 1) continue;
      CHECK(t(m * n) == t(m) * t(n));
    }
    for (std::int64_t p : primes_below(n_max)) {
      const double bound = 2.0 * std::pow(static_cast<double>(p), 5.5);
      CHECK(std::abs(static_cast<double>(t(p))) <= bound);
      int128 p11 = 1;
      for (int i = 0; i < 11; ++i) p11 *= p;
      int128 pe = p, prev = 1;  // p^e, p^{e-1}
      while (pe * p < n_max) {
        CHECK(t(p) * t(static_cast<std::int64_t>(pe)) ==
              t(static_cast<std::int64_t>(pe * p)) + p11 * t(static_cast<std::int64_t>(prev)));
        prev = pe;
        pe *= p;
      }
    }
  }

  TEST_CASE("tau cap") {
    CHECK_THROWS_AS(ramanujan_tau(kTauHardCap + 1), CapExceeded);
  }
}

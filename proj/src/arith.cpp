#include "shiftsum/arith.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "shiftsum/error.hpp"

namespace shiftsum {

std::vector<PrimePower> factorize(std::int64_t n) {
  if (n < 1) throw ConfigError("factorize: n must be positive, got " + std::to_string(n));
  std::vector<PrimePower> out;
  for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<std::int64_t> primes_below(std::int64_t n) {
  std::vector<std::int64_t> primes;
  if (n <= 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(n), false);
  for (std::int64_t i = 2; i < n; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::int64_t j = i * i; j < n; j += i) composite[j] = true;
  }
  return primes;
}

bool is_perfect_square(std::int64_t n) {
  if (n < 0) return false;
  auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(n))));
  for (std::int64_t c = std::max<std::int64_t>(0, r - 1); c <= r + 1; ++c)
    if (c * c == n) return true;
  return false;
}

namespace {

// Jacobi symbol (a | n), n odd positive.
int jacobi(std::int64_t a, std::int64_t n) {
  a %= n;
  if (a < 0) a += n;
  int result = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      const std::int64_t r = n & 7;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

}  // namespace

int kronecker(std::int64_t d, std::int64_t n) {
  if (n < 1) throw ConfigError("kronecker: n must be positive");
  int result = 1;
  while ((n & 1) == 0) {
    n >>= 1;
    if ((d & 1) == 0) return 0;
    const std::int64_t r = ((d % 8) + 8) % 8;
    if (r == 3 || r == 5) result = -result;
  }
  if (n == 1) return result;
  return result * jacobi(d, n);
}

MobiusPhi mobius_phi_tables(std::int64_t n_max) {
  if (n_max < 2) throw ConfigError("mobius_phi_tables: N must be >= 2");
  const auto n = static_cast<std::size_t>(n_max);
  MobiusPhi t{std::vector<int>(n, 0), std::vector<std::int64_t>(n, 0)};
  std::vector<std::int64_t> primes;
  std::vector<bool> composite(n, false);
  t.mu[1] = 1;
  t.phi[1] = 1;
  for (std::size_t i = 2; i < n; ++i) {
    if (!composite[i]) {
      primes.push_back(static_cast<std::int64_t>(i));
      t.mu[i] = -1;
      t.phi[i] = static_cast<std::int64_t>(i) - 1;
    }
    for (const std::int64_t p : primes) {
      const std::size_t m = i * static_cast<std::size_t>(p);
      if (m >= n) break;
      composite[m] = true;
      if (i % p == 0) {
        t.mu[m] = 0;
        t.phi[m] = t.phi[i] * p;
        break;
      }
      t.mu[m] = -t.mu[i];
      t.phi[m] = t.phi[i] * (p - 1);
    }
  }
  return t;
}

std::int64_t mobius(std::int64_t n) {
  std::int64_t mu = 1;
  for (const auto& [p, e] : factorize(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t phi = n;
  for (const auto& [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

std::int64_t divisor_count(std::int64_t n) {
  std::int64_t d = 1;
  for (const auto& [p, e] : factorize(n)) d *= e + 1;
  return d;
}

std::int64_t ramanujan_sum(std::int64_t q, std::int64_t h) {
  if (q < 1) throw ConfigError("ramanujan_sum: q must be >= 1");
  const std::int64_t g = std::gcd(q, h < 0 ? -h : h);  // gcd(q, 0) = q
  const std::int64_t r = q / g;
  return mobius(r) * (euler_phi(q) / euler_phi(r));
}

std::vector<std::uint64_t> divisor_k(int k, std::int64_t lo, std::int64_t hi) {
  if (k < 1) throw ConfigError("divisor_k: k must be >= 1");
  if (lo < 1 || hi <= lo) throw ConfigError("divisor_k: need 1 <= lo < hi");
  const auto n = static_cast<std::size_t>(hi);
  std::vector<std::uint64_t> cur(n, 1);
  cur[0] = 0;
  for (int step = 1; step < k; ++step) {
    std::vector<std::uint64_t> next(n, 0);
    for (std::size_t d = 1; d < n; ++d)
      for (std::size_t m = d; m < n; m += d) next[m] += cur[d];
    cur.swap(next);
  }
  return {cur.begin() + lo, cur.end()};
}

double divisor_k_prime_power(int k, int e) {
  // binom(e + k - 1, k - 1)
  double c = 1.0;
  for (int i = 1; i < k; ++i) c = c * (e + i) / i;
  return c;
}

}  // namespace shiftsum

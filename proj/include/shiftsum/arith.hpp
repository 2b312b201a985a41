#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace shiftsum {

using PrimePower = std::pair<std::int64_t, int>;  // (p, e)

// Trial-division factorization, increasing primes. factorize(1) is empty.
std::vector<PrimePower> factorize(std::int64_t n);

std::vector<std::int64_t> primes_below(std::int64_t n);

bool is_perfect_square(std::int64_t n);

// Kronecker symbol (D | n) for n >= 1.
int kronecker(std::int64_t d, std::int64_t n);

struct MobiusPhi {
  std::vector<int> mu;             // mu[n], n < N
  std::vector<std::int64_t> phi;   // phi[n], n < N (phi[0] = 0)
};

// Linear sieve for n < N. Requires N >= 2.
MobiusPhi mobius_phi_tables(std::int64_t n_max);

std::int64_t mobius(std::int64_t n);
std::int64_t euler_phi(std::int64_t n);
std::int64_t divisor_count(std::int64_t n);

// c_q(h) = mu(q/(q,h)) phi(q) / phi(q/(q,h)); (q, 0) = q.
std::int64_t ramanujan_sum(std::int64_t q, std::int64_t h);

// Exact d_k(n) for n in [lo, hi), by k-1 convolutions of the all-ones table.
std::vector<std::uint64_t> divisor_k(int k, std::int64_t lo, std::int64_t hi);

// d_{k}(p^e) = binom(e + k - 1, k - 1).
double divisor_k_prime_power(int k, int e);

}  // namespace shiftsum

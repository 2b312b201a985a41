#pragma once

#include <cstdint>
#include <vector>

namespace shiftsum {

using int128 = __int128;

// τ(n) fits in a signed 128-bit integer comfortably below this bound.
inline constexpr std::int64_t kTauHardCap = 2'000'001;

// Ramanujan τ(n) for 0 <= n < n_max (τ(0) = 0), read off
//   Δ = q ∏(1 - q^m)^24 = q (Σ_k (-1)^k (2k+1) q^{k(k+1)/2})^8.
// The octic power is three exact squarings by Kronecker substitution into GMP integers.
std::vector<int128> ramanujan_tau(std::int64_t n_max);

// Normalized Hecke eigenvalue τ(n) / n^{11/2}.
double normalized_tau(int128 tau, std::int64_t n);

}  // namespace shiftsum

#include "shiftsum/hecke.hpp"

#include <gmp.h>

#include <cmath>
#include <string>

#include "shiftsum/error.hpp"

static_assert(GMP_LIMB_BITS == 64, "Kronecker packing assumes 64-bit limbs");

namespace shiftsum {
namespace {

using uint128 = unsigned __int128;

// Coefficients are packed into 128-bit slots, two limbs each. The low `len`
// coefficients of the square are recovered exactly as long as each of them is
// below 2^127 in absolute value; garbage in the truncated upper half only
// produces carries that travel upward.
std::vector<int128> square_truncated(const std::vector<int128>& a, std::size_t len) {
  const std::size_t n = a.size();
  std::vector<mp_limb_t> pos(2 * n, 0), neg(2 * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const bool negative = a[i] < 0;
    const uint128 mag = negative ? static_cast<uint128>(-a[i]) : static_cast<uint128>(a[i]);
    auto& dst = negative ? neg : pos;
    dst[2 * i] = static_cast<mp_limb_t>(mag);
    dst[2 * i + 1] = static_cast<mp_limb_t>(mag >> 64);
  }
  mpz_t zp, zn;
  mpz_init(zp);
  mpz_init(zn);
  mpz_import(zp, pos.size(), -1, sizeof(mp_limb_t), 0, 0, pos.data());
  mpz_import(zn, neg.size(), -1, sizeof(mp_limb_t), 0, 0, neg.data());
  mpz_sub(zp, zp, zn);
  mpz_mul(zp, zp, zp);
  mpz_clear(zn);

  const std::size_t limbs = mpz_size(zp);
  const mp_limb_t* data = mpz_limbs_read(zp);
  auto limb = [&](std::size_t k) -> mp_limb_t { return k < limbs ? data[k] : 0; };

  std::vector<int128> out(len);
  uint128 carry = 0;
  for (std::size_t i = 0; i < len; ++i) {
    const uint128 chunk = (static_cast<uint128>(limb(2 * i + 1)) << 64) | limb(2 * i);
    const uint128 v = chunk + carry;
    if (carry != 0 && v == 0) {
      out[i] = 0;  // chunk + carry == 2^128
      carry = 1;
    } else if ((v >> 127) != 0) {
      out[i] = static_cast<int128>(v);  // two's complement: v - 2^128
      carry = 1;
    } else {
      out[i] = static_cast<int128>(v);
      carry = 0;
    }
  }
  mpz_clear(zp);
  return out;
}

}  // namespace

std::vector<int128> ramanujan_tau(std::int64_t n_max) {
  if (n_max < 1) throw ConfigError("ramanujan_tau: n_max must be >= 1");
  if (n_max > kTauHardCap)
    throw CapExceeded("ramanujan_tau: n_max " + std::to_string(n_max) + " exceeds cap " +
                      std::to_string(kTauHardCap));
  std::vector<int128> tau(static_cast<std::size_t>(n_max), 0);
  if (n_max <= 1) return tau;
  const auto len = static_cast<std::size_t>(n_max - 1);  // τ(i+1) is coefficient i

  std::vector<int128> series(len, 0);
  for (std::int64_t k = 0;; ++k) {
    const std::int64_t e = k * (k + 1) / 2;
    if (e >= static_cast<std::int64_t>(len)) break;
    series[static_cast<std::size_t>(e)] = (k % 2 == 0 ? 1 : -1) * (2 * k + 1);
  }
  for (int round = 0; round < 3; ++round) series = square_truncated(series, len);
  for (std::size_t i = 0; i < len; ++i) tau[i + 1] = series[i];
  return tau;
}

double normalized_tau(int128 tau, std::int64_t n) {
  const long double nn = static_cast<long double>(n);
  return static_cast<double>(static_cast<long double>(tau) /
                             (nn * nn * nn * nn * nn * std::sqrt(nn)));
}

}  // namespace shiftsum

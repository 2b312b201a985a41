#include "shiftsum/value_table.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>

#include "shiftsum/arith.hpp"
#include "shiftsum/error.hpp"
#include "shiftsum/hecke.hpp"

namespace shiftsum {

std::span<const double> ValueTable::f_slice(std::int64_t first, std::int64_t last) const {
  if (!covers(first, last))
    throw ConfigError("value table [" + std::to_string(lo) + ", " + std::to_string(hi) +
                      ") does not cover [" + std::to_string(first) + ", " +
                      std::to_string(last) + "]");
  return std::span<const double>(f_vals).subspan(static_cast<std::size_t>(first - lo),
                                                 static_cast<std::size_t>(last - first + 1));
}

std::span<const double> ValueTable::g_slice(std::int64_t first, std::int64_t last) const {
  if (!covers(first, last))
    throw ConfigError("value table [" + std::to_string(lo) + ", " + std::to_string(hi) +
                      ") does not cover [" + std::to_string(first) + ", " +
                      std::to_string(last) + "]");
  return std::span<const double>(g_vals).subspan(static_cast<std::size_t>(first - lo),
                                                 static_cast<std::size_t>(last - first + 1));
}

void check_range(const FamilySpec& family, std::int64_t lo, std::int64_t hi,
                 const SieveLimits& limits) {
  if (lo < 1 || hi <= lo)
    throw ConfigError("sieve range must satisfy 1 <= lo < hi (got [" + std::to_string(lo) +
                      ", " + std::to_string(hi) + "))");
  if (hi > limits.max_hi)
    throw CapExceeded("sieve range end " + std::to_string(hi) + " exceeds cap " +
                      std::to_string(limits.max_hi));
  if (family.kind == FamilyKind::HeckeDelta &&
      hi > std::min<std::int64_t>(limits.max_hi_hecke, kTauHardCap))
    throw CapExceeded("HeckeDelta range end " + std::to_string(hi) + " exceeds cap " +
                      std::to_string(std::min<std::int64_t>(limits.max_hi_hecke, kTauHardCap)));
}

namespace {

// One period of n -> (D | n); 4|D| is always a period of the Kronecker symbol.
std::vector<double> character_period(std::int64_t d) {
  const std::int64_t m = 4 * (d < 0 ? -d : d);
  std::vector<double> table(static_cast<std::size_t>(m));
  for (std::int64_t r = 0; r < m; ++r)
    table[static_cast<std::size_t>(r)] = r == 0 ? 0.0 : kronecker(d, r);
  return table;
}

}  // namespace

std::vector<double> sieve_g(const FamilySpec& family, std::int64_t lo, std::int64_t hi,
                            const SieveLimits& limits) {
  check_range(family, lo, hi, limits);
  const auto n = static_cast<std::size_t>(hi - lo);
  std::vector<double> g(n);
  switch (family.kind) {
    case FamilyKind::Unit:
      std::fill(g.begin(), g.end(), 1.0);
      break;
    case FamilyKind::RealCharacter: {
      if (family.discriminant == 0) throw ConfigError("RealCharacter: D = 0");
      const auto period = character_period(family.discriminant);
      const auto m = static_cast<std::int64_t>(period.size());
      for (std::size_t i = 0; i < n; ++i)
        g[i] = period[static_cast<std::size_t>((lo + static_cast<std::int64_t>(i)) % m)];
      break;
    }
    case FamilyKind::HeckeDelta: {
      const auto tau = ramanujan_tau(hi);
      for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t m = lo + static_cast<std::int64_t>(i);
        g[i] = normalized_tau(tau[static_cast<std::size_t>(m)], m);
      }
      break;
    }
  }
  return g;
}

std::vector<double> convolve_with_one(std::span<const double> g, std::int64_t lo) {
  if (lo != 1) throw ConfigError("convolve_with_one: g table must start at n = 1");
  const std::size_t n = g.size();
  std::vector<double> f(n, 0.0);
  // index i holds n = i + 1
  for (std::size_t d = 1; d <= n; ++d) {
    const double gd = g[d - 1];
    if (gd == 0.0) continue;
    for (std::size_t m = d; m <= n; m += d) f[m - 1] += gd;
  }
  return f;
}

ValueTable build_value_table(const FamilySpec& family, std::int64_t lo, std::int64_t hi,
                             const SieveLimits& limits) {
  check_range(family, lo, hi, limits);
  if (hi > limits.segment_threshold && family.integer_valued())
    return build_value_table_segmented(family, lo, hi, limits);
  auto g = sieve_g(family, 1, hi, limits);
  auto f = convolve_with_one(g, 1);
  ValueTable t;
  t.lo = lo;
  t.hi = hi;
  t.family = family;
  t.g_vals.assign(g.begin() + (lo - 1), g.end());
  t.f_vals.assign(f.begin() + (lo - 1), f.end());
  return t;
}

ValueTable build_value_table_segmented(const FamilySpec& family, std::int64_t lo,
                                       std::int64_t hi, const SieveLimits& limits) {
  check_range(family, lo, hi, limits);
  if (!family.integer_valued())
    throw ConfigError("segmented sieve supports integer-valued families only");

  std::vector<double> period;
  if (family.kind == FamilyKind::RealCharacter) period = character_period(family.discriminant);
  const auto m = static_cast<std::int64_t>(period.size());
  auto g_of = [&](std::int64_t n) -> double {
    return family.kind == FamilyKind::Unit ? 1.0 : period[static_cast<std::size_t>(n % m)];
  };

  ValueTable t;
  t.lo = lo;
  t.hi = hi;
  t.family = family;
  t.g_vals.resize(static_cast<std::size_t>(hi - lo));
  t.f_vals.resize(static_cast<std::size_t>(hi - lo));
  for (std::int64_t n = lo; n < hi; ++n) t.g_vals[static_cast<std::size_t>(n - lo)] = g_of(n);

  auto root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(hi)));
  while (root * root < hi) ++root;
  const auto primes = primes_below(root + 1);

  const std::int64_t seg = std::max<std::int64_t>(1, limits.segment_length);
  std::vector<std::int64_t> rest;
  for (std::int64_t s = lo; s < hi; s += seg) {
    const std::int64_t e = std::min(hi, s + seg);
    rest.resize(static_cast<std::size_t>(e - s));
    for (std::int64_t n = s; n < e; ++n) rest[static_cast<std::size_t>(n - s)] = n;
    double* fv = t.f_vals.data() + (s - lo);
    std::fill(fv, fv + (e - s), 1.0);
    for (const std::int64_t p : primes) {
      if (p >= e) break;
      const double gp = g_of(p);
      for (std::int64_t n = ((s + p - 1) / p) * p; n < e; n += p) {
        auto& r = rest[static_cast<std::size_t>(n - s)];
        // f(p^k) = Σ_{i<=k} g(p)^i
        double term = 1.0, local = 1.0;
        while (r % p == 0) {
          r /= p;
          term *= gp;
          local += term;
        }
        fv[n - s] *= local;
      }
    }
    for (std::int64_t n = s; n < e; ++n) {
      const std::int64_t r = rest[static_cast<std::size_t>(n - s)];
      if (r > 1) fv[n - s] *= 1.0 + g_of(r);
    }
  }
  return t;
}

namespace {

template <class T>
void put_le(std::ofstream& out, T value) {
  static_assert(sizeof(T) == 8);
  std::uint64_t bits;
  std::memcpy(&bits, &value, 8);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  out.write(reinterpret_cast<const char*>(&bits), 8);
}

template <class T>
T get_le(std::ifstream& in) {
  static_assert(sizeof(T) == 8);
  std::uint64_t bits = 0;
  if (!in.read(reinterpret_cast<char*>(&bits), 8))
    throw ConfigError("value table cache: truncated file");
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  T value;
  std::memcpy(&value, &bits, 8);
  return value;
}

}  // namespace

void save_value_table(const ValueTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write value table cache " + path.string());
  put_le<std::uint64_t>(out, kValueTableMagic);
  put_le<std::uint64_t>(out, static_cast<std::uint64_t>(table.family.kind));
  put_le<std::int64_t>(out, table.family.discriminant);
  put_le<std::uint64_t>(out, static_cast<std::uint64_t>(table.family.degree_k));
  put_le<std::int64_t>(out, table.lo);
  put_le<std::int64_t>(out, table.hi);
  for (const double v : table.g_vals) put_le<double>(out, v);
  for (const double v : table.f_vals) put_le<double>(out, v);
  if (!out) throw ConfigError("failed writing value table cache " + path.string());
}

ValueTable load_value_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open value table cache " + path.string());
  if (get_le<std::uint64_t>(in) != kValueTableMagic)
    throw ConfigError("value table cache " + path.string() + ": bad magic");
  const auto kind = get_le<std::uint64_t>(in);
  const auto d = get_le<std::int64_t>(in);
  const auto k = get_le<std::uint64_t>(in);
  ValueTable t;
  t.lo = get_le<std::int64_t>(in);
  t.hi = get_le<std::int64_t>(in);
  switch (kind) {
    case 0: t.family = FamilySpec::unit(); break;
    case 1: t.family = FamilySpec::real_character(d); break;
    case 2: t.family = FamilySpec::hecke_delta(); break;
    default: throw ConfigError("value table cache: unknown family kind");
  }
  if (static_cast<std::uint64_t>(t.family.degree_k) != k)
    throw ConfigError("value table cache: degree does not match family");
  if (t.hi <= t.lo || t.lo < 1) throw ConfigError("value table cache: bad range");
  const auto n = static_cast<std::size_t>(t.hi - t.lo);
  t.g_vals.resize(n);
  t.f_vals.resize(n);
  for (auto& v : t.g_vals) v = get_le<double>(in);
  for (auto& v : t.f_vals) v = get_le<double>(in);
  return t;
}

std::filesystem::path cache_path(const std::filesystem::path& dir, const FamilySpec& family,
                                 std::int64_t lo, std::int64_t hi) {
  std::string tag = family.to_string();
  for (auto& c : tag)
    if (c == ':') c = '_';
  return dir / ("vt_" + tag + "_" + std::to_string(lo) + "_" + std::to_string(hi) + ".bin");
}

ValueTable load_or_build(const FamilySpec& family, std::int64_t lo, std::int64_t hi,
                         const std::filesystem::path& cache_dir, const SieveLimits& limits) {
  if (cache_dir.empty()) return build_value_table(family, lo, hi, limits);
  const auto path = cache_path(cache_dir, family, lo, hi);
  if (std::filesystem::exists(path)) {
    auto t = load_value_table(path);
    if (t.family == family && t.lo == lo && t.hi == hi) return t;
  }
  auto t = build_value_table(family, lo, hi, limits);
  std::filesystem::create_directories(cache_dir);
  save_value_table(t, path);
  return t;
}

}  // namespace shiftsum

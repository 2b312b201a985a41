#include "shiftsum/lfunc.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numeric>
#include <numbers>
#include <string>

#include "shiftsum/arith.hpp"
#include "shiftsum/error.hpp"
#include "shiftsum/fit.hpp"
#include "shiftsum/hecke.hpp"

namespace shiftsum {

double character_l_value_at_one(std::int64_t d) {
  if (d == 0 || is_perfect_square(d))
    throw ConfigError("L(χ_D, 1) needs a non-principal character (D = " + std::to_string(d) + ")");
  const std::int64_t m = 4 * (d < 0 ? -d : d);
  const long double inv_m = 1.0L / static_cast<long double>(m);
  long double sum = 0.0L;
  for (std::int64_t a = 1; a < m; ++a) {
    const int chi = kronecker(d, a);
    if (chi == 0) continue;
    sum += chi * boost::math::digamma(static_cast<long double>(a) * inv_m);
  }
  return static_cast<double>(-sum * inv_m);
}

double delta_l_value(double s, double split) {
  if (!(split > 0.0)) throw ConfigError("delta_l_value: split must be positive");
  constexpr int kTerms = 40;
  const auto tau = ramanujan_tau(kTerms + 1);
  const double two_pi = 2.0 * std::numbers::pi;
  // Λ(s) = Σ τ(n) [ (2πn)^{-s} Γ(s, 2πn t) + (2πn)^{s-12} Γ(12-s, 2πn/t) ]
  long double lambda = 0.0L;
  for (int n = 1; n <= kTerms; ++n) {
    const double x = two_pi * n;
    const long double term =
        std::pow(static_cast<long double>(x), -s) * boost::math::tgamma(s, x * split) +
        std::pow(static_cast<long double>(x), s - 12.0) * boost::math::tgamma(12.0 - s, x / split);
    lambda += static_cast<long double>(tau[n]) * term;
  }
  return static_cast<double>(lambda * std::pow(static_cast<long double>(two_pi), s) /
                             boost::math::tgamma(static_cast<long double>(s)));
}

double l_value_at_one(const FamilySpec& family) {
  switch (family.kind) {
    case FamilyKind::Unit:
      throw ConfigError("unit family: L(g, s) = ζ(s) has a pole at s = 1");
    case FamilyKind::RealCharacter:
      return character_l_value_at_one(family.discriminant);
    case FamilyKind::HeckeDelta:
      return delta_l_value(6.5);  // Σ τ(n) n^{-11/2} n^{-1}
  }
  return 0.0;
}

LocalEulerData::LocalEulerData(const FamilySpec& family, std::int64_t p_max)
    : family_(family), p_max_(std::max<std::int64_t>(p_max, 2)) {
  if (family_.kind == FamilyKind::HeckeDelta) {
    const auto tau = ramanujan_tau(p_max_ + 1);
    hecke_lambda_.resize(tau.size());
    for (std::size_t n = 1; n < tau.size(); ++n)
      hecke_lambda_[n] = normalized_tau(tau[n], static_cast<std::int64_t>(n));
  }
}

double LocalEulerData::g_prime(std::int64_t p) const {
  switch (family_.kind) {
    case FamilyKind::Unit: return 1.0;
    case FamilyKind::RealCharacter: return kronecker(family_.discriminant, p);
    case FamilyKind::HeckeDelta:
      if (p > p_max_)
        throw CapExceeded("local data for p = " + std::to_string(p) + " beyond p_max = " +
                          std::to_string(p_max_));
      return hecke_lambda_[static_cast<std::size_t>(p)];
  }
  return 0.0;
}

double LocalEulerData::g_prime_power(std::int64_t p, int e) const {
  if (e == 0) return 1.0;
  const double gp = g_prime(p);
  if (family_.kind != FamilyKind::HeckeDelta) return std::pow(gp, e);
  // λ(p^{j+1}) = λ(p) λ(p^j) - λ(p^{j-1})
  double prev = 1.0, cur = gp;
  for (int j = 1; j < e; ++j) {
    const double next = gp * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double LocalEulerData::f_prime_power(std::int64_t p, int e) const {
  const double gp = g_prime(p);
  double total = 1.0;
  if (family_.kind != FamilyKind::HeckeDelta) {
    double term = 1.0;
    for (int j = 1; j <= e; ++j) total += (term *= gp);
    return total;
  }
  double prev = 1.0, cur = gp;
  for (int j = 1; j <= e; ++j) {
    total += cur;
    const double next = gp * cur - prev;
    prev = cur;
    cur = next;
  }
  return total;
}

double LocalEulerData::inverse_euler_factor(std::int64_t p) const {
  const double inv_p = 1.0 / static_cast<double>(p);
  switch (family_.kind) {
    case FamilyKind::Unit: return 1.0 - inv_p;
    case FamilyKind::RealCharacter: return 1.0 - g_prime(p) * inv_p;
    case FamilyKind::HeckeDelta:  // α1 + α2 = λ(p), α1 α2 = 1
      return 1.0 - g_prime(p) * inv_p + inv_p * inv_p;
  }
  return 1.0;
}

namespace {

struct SeriesValue {
  double value;
  double tail_bound;
};

// Σ_{j>=0} f(p^{l+j}) p^{-j}, stopped at the first j whose majorant
// d_{k+1}(p^{l+j}) p^{-j} drops to the threshold.
SeriesValue local_series(const LocalEulerData& local, std::int64_t p, int l,
                         const LocalSeriesOptions& opt) {
  const int k1 = local.family().degree_k + 1;
  const double inv_p = 1.0 / static_cast<double>(p);
  int terms = 0;
  for (double scale = 1.0;; scale *= inv_p, ++terms)
    if (divisor_k_prime_power(k1, l + terms) * scale <= opt.majorant_threshold) break;
  terms *= std::max(1, opt.depth_multiplier);

  double value = 0.0, scale = 1.0;
  for (int j = 0; j < terms; ++j, scale *= inv_p) value += local.f_prime_power(p, l + j) * scale;

  double tail = 0.0;
  for (int j = terms;; ++j, scale *= inv_p) {
    const double m = divisor_k_prime_power(k1, l + j) * scale;
    tail += m;
    if (m <= 1e-40 * std::max(tail, 1e-300) || j > terms + 10000) break;
  }
  return {value, tail};
}

}  // namespace

LocalFactorData local_factor_r(const LocalEulerData& local, double l_value, std::int64_t q0,
                               std::int64_t q1, const LocalSeriesOptions& options) {
  if (q0 < 1 || q1 < 1) throw ConfigError("local_factor_r: q0 and q1 must be positive");
  if (local.family().has_pole_at_one)
    throw ConfigError("local_factor_r: family " + local.family().to_string() +
                      " has a pole at s = 1");
  LocalFactorData out;
  out.q0 = q0;
  out.q1 = q1;

  double prefactor = 1.0;  // ∏_{p|q} (1 - 1/p) ∏_i (1 - α_i(p)/p)
  double series_product = 1.0, majorant_product = 1.0;
  for (const auto& [p, e] : factorize(q0 * q1)) {
    prefactor *= (1.0 - 1.0 / static_cast<double>(p)) * local.inverse_euler_factor(p);
    int l = 0;
    for (std::int64_t t = q0; t % p == 0; t /= p) ++l;
    const bool in_q1 = q1 % p == 0;
    if (l == 0) continue;  // n coprime to p: local factor 1
    if (in_q1) {
      // (n, p) = 1 pins the p-part of q0 n to exactly p^l.
      const double v = local.f_prime_power(p, l);
      series_product *= v;
      majorant_product *= std::abs(v);
      continue;
    }
    const auto s = local_series(local, p, l, options);
    series_product *= s.value;
    majorant_product *= std::abs(s.value) + s.tail_bound;
  }
  out.r_value = prefactor * series_product;
  out.w_value = l_value * out.r_value;
  out.truncation_error =
      std::abs(l_value * prefactor) * (majorant_product - std::abs(series_product));
  return out;
}

LocalFactorData local_factor_r(const FamilySpec& family, std::int64_t q0, std::int64_t q1) {
  const LocalEulerData local(family, q0 * q1);
  return local_factor_r(local, l_value_at_one(family), q0, q1);
}

DqTable compute_dq_table(const FamilySpec& family, std::int64_t q_trunc) {
  if (q_trunc < 1) throw ConfigError("compute_dq_table: Q_trunc must be >= 1");
  if (family.has_pole_at_one)
    throw ConfigError("compute_dq_table: family " + family.to_string() +
                      " has a pole at s = 1 and is excluded from the singular series");
  DqTable t;
  t.q_trunc = q_trunc;
  t.family = family;
  t.l_value = l_value_at_one(family);
  t.d_q.assign(static_cast<std::size_t>(q_trunc + 1), 0.0);
  const LocalEulerData local(family, q_trunc);
  const auto mp = mobius_phi_tables(q_trunc + 1);
  for (std::int64_t q = 1; q <= q_trunc; ++q) {
    double sum = 0.0;
    for (std::int64_t q0 = 1; q0 <= q; ++q0) {
      if (q % q0 != 0) continue;
      const std::int64_t q1 = q / q0;
      const int mu = mp.mu[static_cast<std::size_t>(q1)];
      if (mu == 0) continue;
      const auto factor = local_factor_r(local, t.l_value, q0, q1);
      const double weight =
          mu / (static_cast<double>(mp.phi[static_cast<std::size_t>(q1)]) * static_cast<double>(q0));
      sum += weight * factor.w_value;
      t.max_truncation_error = std::max(t.max_truncation_error, factor.truncation_error);
      t.components.push_back({q, factor});
    }
    t.d_q[static_cast<std::size_t>(q)] = sum;
  }
  return t;
}

double empirical_w_oracle(const ValueTable& table, std::int64_t q0, std::int64_t q1,
                          std::int64_t x) {
  if (q0 < 1 || q1 < 1 || x < 1) throw ConfigError("empirical_w_oracle: bad arguments");
  if (!table.covers(q0 * x, 2 * q0 * x))
    throw CapExceeded("empirical_w_oracle: table does not cover [q0 X, 2 q0 X]");
  long double sum = 0.0L;
  for (std::int64_t n = x; n <= 2 * x; ++n) {
    if (q1 > 1 && std::gcd(n, q1) != 1) continue;
    sum += table.f(q0 * n);
  }
  return static_cast<double>(sum / static_cast<long double>(x));
}

double empirical_w_oracle(const FamilySpec& family, std::int64_t q0, std::int64_t q1,
                          std::int64_t x, const SieveLimits& limits) {
  const auto table = build_value_table(family, q0 * x, 2 * q0 * x + 1, limits);
  return empirical_w_oracle(table, q0, q1, x);
}

DqDecayFit fit_dq_decay(const DqTable& table, std::int64_t q_max) {
  q_max = std::min(q_max, table.q_trunc);
  const double floor = 1e-12 * std::abs(table.at(1));
  std::vector<double> lq, ly, lll, lz;
  std::vector<std::int64_t> used;
  for (std::int64_t q = 2; q <= q_max; ++q) {
    const double d = std::abs(table.at(q));
    if (d <= floor) continue;
    used.push_back(q);
    lq.push_back(std::log(static_cast<double>(q)));
    ly.push_back(std::log(d * static_cast<double>(q)));
    lll.push_back(std::log(std::log(static_cast<double>(q) + 2.0)));
    lz.push_back(std::log(d * static_cast<double>(q) / static_cast<double>(divisor_count(q))));
  }
  DqDecayFit out;
  out.points = used.size();
  if (used.size() < 2) return out;
  out.slope = least_squares(lq, ly).slope;
  out.envelope_a = least_squares(lll, lz).slope;
  for (std::size_t i = 0; i < used.size(); ++i)
    out.envelope_c = std::max(out.envelope_c, std::exp(lz[i] - out.envelope_a * lll[i]));
  return out;
}

}  // namespace shiftsum

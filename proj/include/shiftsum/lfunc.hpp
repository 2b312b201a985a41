#pragma once

#include <cstdint>
#include <vector>

#include "shiftsum/family.hpp"
#include "shiftsum/value_table.hpp"

namespace shiftsum {

// L(g, 1). Rejects families whose L-function has a pole at s = 1.
double l_value_at_one(const FamilySpec& family);

// L(χ_D, 1) = -(1/m) Σ_{a=1}^{m} χ_D(a) ψ(a/m), m = 4|D|.
double character_l_value_at_one(std::int64_t d);

// Classical L(Δ, s) from the completed function Λ(s) = (2π)^{-s} Γ(s) L(Δ, s) = Λ(12 - s),
// split at y = t on the imaginary axis. Any t > 0 gives the same value.
double delta_l_value(double s, double split = 1.0);

// Prime-local data of g: Satake parameters enter only through
// g(p^e) and ∏_i (1 - α_i(p) p^{-1}).
class LocalEulerData {
 public:
  LocalEulerData(const FamilySpec& family, std::int64_t p_max);

  const FamilySpec& family() const { return family_; }
  std::int64_t p_max() const { return p_max_; }
  double g_prime(std::int64_t p) const;
  double g_prime_power(std::int64_t p, int e) const;
  double f_prime_power(std::int64_t p, int e) const;
  // ∏_{i=1}^{k} (1 - α_i(p)/p)
  double inverse_euler_factor(std::int64_t p) const;

 private:
  FamilySpec family_;
  std::int64_t p_max_;
  std::vector<double> hecke_lambda_;  // λ(n) = τ(n)/n^{11/2}, n <= p_max
};

struct LocalFactorData {
  std::int64_t q0 = 1;
  std::int64_t q1 = 1;
  double r_value = 1.0;
  double w_value = 0.0;
  double truncation_error = 0.0;  // bound on |w_value - exact|
};

struct LocalSeriesOptions {
  double majorant_threshold = 1e-14;
  int depth_multiplier = 1;  // 2 recomputes each local series with twice the terms
};

// w_{f,q0,q1} = L(g,1) R_{q0,q1}(1), with R the correction making
//   Σ_{(n,q1)=1} f(q0 n) n^{-s} = L(g,s) ζ(s) R_{q0,q1}(s).
LocalFactorData local_factor_r(const LocalEulerData& local, double l_value, std::int64_t q0,
                               std::int64_t q1, const LocalSeriesOptions& options = {});
LocalFactorData local_factor_r(const FamilySpec& family, std::int64_t q0, std::int64_t q1);

struct DqComponent {
  std::int64_t q = 1;
  LocalFactorData factor;
};

struct DqTable {
  std::int64_t q_trunc = 0;
  std::vector<double> d_q;  // d_q[q] for 1 <= q <= q_trunc; d_q[0] unused
  FamilySpec family;
  double l_value = 0.0;
  double max_truncation_error = 0.0;
  std::vector<DqComponent> components;  // every (q0, q1) with μ(q1) != 0

  double at(std::int64_t q) const { return d_q.at(static_cast<std::size_t>(q)); }
};

// D_q = Σ_{q = q0 q1} μ(q1) / (φ(q1) q0) · w_{f,q0,q1}
DqTable compute_dq_table(const FamilySpec& family, std::int64_t q_trunc);

// (1/X) Σ_{X <= n <= 2X, (n, q1) = 1} f(q0 n); the table must cover [q0 X, 2 q0 X].
double empirical_w_oracle(const ValueTable& table, std::int64_t q0, std::int64_t q1,
                          std::int64_t x);
double empirical_w_oracle(const FamilySpec& family, std::int64_t q0, std::int64_t q1,
                          std::int64_t x, const SieveLimits& limits = {});

struct DqDecayFit {
  double slope = 0.0;         // log(|D_q| q) against log q
  double envelope_c = 0.0;    // |D_q| <= C d_2(q) (log(q+2))^A / q
  double envelope_a = 0.0;
  std::size_t points = 0;
};

// Fit over 2 <= q <= q_max, skipping q with |D_q| <= 1e-12 |D_1|.
DqDecayFit fit_dq_decay(const DqTable& table, std::int64_t q_max);

}  // namespace shiftsum

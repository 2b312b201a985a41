#include "shiftsum/circle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "shiftsum/arith.hpp"
#include "shiftsum/error.hpp"

namespace shiftsum {

namespace {

// 8-point Gauss–Legendre on [-1, 1].
constexpr double kGlNodes[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                0.7966664774136267,  0.9602898564975363};
constexpr double kGlWeights[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                  0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                  0.2223810344533745, 0.1012285362903763};

double frac(double x) { return x - std::floor(x); }

// Splits [lo, hi] (any real interval of length < 1) into pieces of [0, 1).
void push_mod1(std::vector<Interval>& out, double lo, double hi) {
  if (hi - lo >= 1.0) {
    out.push_back({0.0, 1.0});
    return;
  }
  const double shift = std::floor(lo);
  lo -= shift;
  hi -= shift;
  if (hi <= 1.0) {
    out.push_back({lo, hi});
  } else {
    out.push_back({lo, 1.0});
    out.push_back({0.0, hi - 1.0});
  }
}

std::vector<Interval> merge(std::vector<Interval> v) {
  std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> out;
  for (const auto& iv : v) {
    if (iv.hi <= iv.lo) continue;
    if (!out.empty() && iv.lo <= out.back().hi)
      out.back().hi = std::max(out.back().hi, iv.hi);
    else
      out.push_back(iv);
  }
  return out;
}

// a \ b for sorted disjoint lists.
std::vector<Interval> subtract(const std::vector<Interval>& a, const std::vector<Interval>& b) {
  std::vector<Interval> out;
  for (const auto& iv : a) {
    double cur = iv.lo;
    for (const auto& cut : b) {
      if (cut.hi <= cur) continue;
      if (cut.lo >= iv.hi) break;
      if (cut.lo > cur) out.push_back({cur, cut.lo});
      cur = std::max(cur, cut.hi);
      if (cur >= iv.hi) break;
    }
    if (cur < iv.hi) out.push_back({cur, iv.hi});
  }
  return out;
}

std::vector<Interval> intersect(const std::vector<Interval>& a, const std::vector<Interval>& b) {
  std::vector<Interval> out;
  std::size_t j = 0;
  for (const auto& iv : a) {
    while (j < b.size() && b[j].hi <= iv.lo) ++j;
    for (std::size_t k = j; k < b.size() && b[k].lo < iv.hi; ++k) {
      const double lo = std::max(iv.lo, b[k].lo);
      const double hi = std::min(iv.hi, b[k].hi);
      if (hi > lo) out.push_back({lo, hi});
    }
  }
  return out;
}

std::vector<Interval> window(double theta, std::int64_t h) {
  std::vector<Interval> w;
  const double half = 0.5 / static_cast<double>(h);
  push_mod1(w, theta - half, theta + half);
  return merge(w);
}

}  // namespace

ArcParams ArcParams::make(std::int64_t x, double eps, std::int64_t h,
                          std::optional<std::int64_t> q_override) {
  if (x < 1) throw ConfigError("arc parameters: X must be >= 1");
  if (!(eps > 0.0)) throw ConfigError("arc parameters: eps must be positive");
  if (h < 1) throw ConfigError("arc parameters: H must be >= 1");
  ArcParams p;
  p.x = x;
  p.eps = eps;
  p.h = h;
  const double xd = static_cast<double>(x);
  const double qraw = std::floor(std::pow(xd, 1.0 / 12.0 - 10.0 * eps) * (1.0 + 1e-12));
  p.q = std::max<std::int64_t>(1, static_cast<std::int64_t>(qraw));
  if (q_override) {
    if (*q_override < 1) throw ConfigError("arc parameters: Q override must be >= 1");
    p.q = *q_override;
    p.q_overridden = true;
  }
  p.delta = std::pow(xd, -5.0 / 6.0 - 2.0 * eps);
  return p;
}

bool ArcParams::arcs_disjoint() const {
  const double qd = static_cast<double>(q);
  return delta < 1.0 / (2.0 * qd * qd);
}

double ArcParams::theorem_h_min() const {
  return std::pow(static_cast<double>(x), 23.0 / 24.0 + 10.0 * eps);
}
double ArcParams::theorem_h_max() const {
  return std::pow(static_cast<double>(x), 1.0 - eps);
}
bool ArcParams::in_theorem_range() const {
  const auto hd = static_cast<double>(h);
  return theorem_h_min() <= hd && hd <= theorem_h_max();
}

ArcDecomposition farey_centers(const ArcParams& params) {
  if (params.q < 1) throw ConfigError("farey_centers: Q must be >= 1");
  ArcDecomposition dec;
  dec.params = params;
  for (std::int64_t q = 1; q <= params.q; ++q)
    for (std::int64_t a = 1; a <= q; ++a)
      if (std::gcd(a, q) == 1) dec.centers.push_back({a, q});

  std::vector<Interval> raw;
  for (const auto& c : dec.centers) {
    const double center = c.a == c.q ? 0.0 : c.value();
    push_mod1(raw, center - params.delta, center + params.delta);
  }
  dec.major = merge(std::move(raw));
  std::vector<double> lengths;
  lengths.reserve(dec.major.size());
  for (const auto& iv : dec.major) lengths.push_back(iv.length());
  dec.major_measure = pairwise_sum(lengths);
  const double nominal =
      std::min(1.0, 2.0 * params.delta * static_cast<double>(dec.centers.size()));
  dec.overlap_correction = nominal - dec.major_measure;
  dec.overlapping = !params.arcs_disjoint() || dec.overlap_correction > 1e-15;
  return dec;
}

double major_arc_spacing(const ArcParams& params) {
  return std::min(params.delta / 16.0, 1.0 / (8.0 * static_cast<double>(params.x)));
}
double minor_arc_spacing(const ArcParams& params) {
  return 1.0 / (8.0 * static_cast<double>(params.x));
}

ArcQuadrature::ArcQuadrature(const ValueTable& table, std::int64_t x,
                             const std::vector<Interval>& pieces, double spacing,
                             int panel_multiplier) {
  if (!(spacing > 0.0)) throw ConfigError("quadrature spacing must be positive");
  if (panel_multiplier < 1) throw ConfigError("quadrature panel multiplier must be >= 1");
  const TrigPoly poly = exponential_sum_window(table, x);
  for (const auto& iv : pieces) {
    const double len = iv.length();
    if (len <= 0.0) continue;
    const auto panels = static_cast<std::int64_t>(std::ceil(len / spacing * (1.0 - 1e-12))) *
                        panel_multiplier;
    const std::int64_t n = std::max<std::int64_t>(1, panels);
    const double w = len / static_cast<double>(n);
    const ChirpGrid grid(poly, w, n);
    for (int i = 0; i < 8; ++i) {
      const double offset = 0.5 * w * (1.0 + kGlNodes[i]);
      const auto s = grid.evaluate(iv.lo + offset);
      for (std::int64_t k = 0; k < n; ++k) {
        alpha_.push_back(iv.lo + offset + static_cast<double>(k) * w);
        weighted_s2_.push_back(0.5 * w * kGlWeights[i] * std::norm(s[static_cast<std::size_t>(k)]));
      }
    }
  }
}

cplx ArcQuadrature::integrate(std::int64_t h) const {
  const std::size_t n = alpha_.size();
  std::vector<double> re(n), im(n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx e = h == 0 ? cplx(1.0, 0.0) : unit_phase(phase_mod1(h, alpha_[i]));
    re[i] = weighted_s2_[i] * e.real();
    im[i] = weighted_s2_[i] * e.imag();
  }
  return pairwise_sum(re, im);
}

std::vector<ArcIntegral> major_arc_integrals(const ValueTable& table, const ArcDecomposition& dec,
                                             std::int64_t h_first, std::int64_t h_last,
                                             int panel_multiplier) {
  if (h_first > h_last) throw ConfigError("arc integrals: empty h range");
  const ArcQuadrature quad(table, dec.params.x, dec.major, major_arc_spacing(dec.params),
                           panel_multiplier);
  std::vector<ArcIntegral> out;
  for (std::int64_t h = h_first; h <= h_last; ++h) {
    const cplx v = quad.integrate(h);
    out.push_back({h, v.real(), v.imag(), dec.overlapping});
  }
  return out;
}

ArcIntegral major_arc_integral(const ValueTable& table, const ArcDecomposition& dec,
                               std::int64_t h, int panel_multiplier) {
  return major_arc_integrals(table, dec, h, h, panel_multiplier).front();
}

std::vector<Interval> minor_window(const ArcDecomposition& dec, double theta) {
  return subtract(window(frac(theta), dec.params.h), dec.major);
}

double minor_arc_energy(const ValueTable& table, const ArcDecomposition& dec, double theta,
                        int panel_multiplier) {
  const auto pieces = minor_window(dec, theta);
  if (pieces.empty()) return 0.0;
  return ArcQuadrature(table, dec.params.x, pieces, minor_arc_spacing(dec.params),
                       panel_multiplier)
      .energy();
}

double major_window_energy(const ValueTable& table, const ArcDecomposition& dec, double theta) {
  const auto pieces = intersect(window(frac(theta), dec.params.h), dec.major);
  if (pieces.empty()) return 0.0;
  return ArcQuadrature(table, dec.params.x, pieces, major_arc_spacing(dec.params)).energy();
}

ExpSumCheck exp_sum_g_check(const ValueTable& g_table, std::int64_t a, std::int64_t q,
                            double alpha, std::int64_t x, double eps) {
  if (q < 1 || a < 0 || a >= q || std::gcd(a, q) != 1)
    throw ConfigError("expsum check: need 0 <= a < q with (a, q) = 1");
  if (x < 1 || !g_table.covers(1, x))
    throw ConfigError("expsum check: g table must cover [1, X]");
  ExpSumCheck out;
  out.a = a;
  out.q = q;
  out.alpha = alpha;
  const double xd = static_cast<double>(x);
  out.precondition_ok = std::abs(alpha) >= std::pow(xd, -5.0 / 6.0 - 2.0 * eps);

  const auto n = static_cast<std::size_t>(x);
  std::vector<double> re(n), im(n);
  const double qd = static_cast<double>(q);
  for (std::int64_t m = 1; m <= x; ++m) {
    const double c = g_table.g(m);
    const std::size_t i = static_cast<std::size_t>(m - 1);
    if (c == 0.0) {
      re[i] = im[i] = 0.0;
      continue;
    }
    // (ma mod q)/q is exact in the numerator; mα is reduced separately.
    const double rational = static_cast<double>((m % q) * a % q) / qd;
    const cplx e = unit_phase(rational + phase_mod1(m, alpha));
    re[i] = c * e.real();
    im[i] = c * e.imag();
  }
  out.observed = std::abs(pairwise_sum(re, im));
  const double e2 = eps * eps;
  out.bound = std::pow(qd, 0.5 + e2) * std::pow(xd, 1.0 + e2) *
                  std::pow(std::abs(alpha), 0.5 + e2) +
              std::pow(xd, 5.0 / 6.0 + 6.0 * eps);
  return out;
}

DivisorRangeSum::DivisorRangeSum(const ValueTable& g_table, std::int64_t x, std::int64_t d_lo,
                                 std::int64_t d_hi)
    : table_(&g_table), x_(x), d_lo_(std::max<std::int64_t>(1, d_lo)), d_hi_(d_hi) {
  if (!empty() && !g_table.covers(d_lo_, d_hi_))
    throw ConfigError("divisor split: g table does not cover the divisor range");
}

cplx DivisorRangeSum::operator()(double alpha) const {
  if (empty()) return {0.0, 0.0};
  const auto n = static_cast<std::size_t>(d_hi_ - d_lo_ + 1);
  std::vector<double> re(n, 0.0), im(n, 0.0);
  for (std::int64_t d = d_lo_; d <= d_hi_; ++d) {
    const double c = table_->g(d);
    if (c == 0.0) continue;
    const std::int64_t k0 = (x_ + d - 1) / d;
    const std::int64_t k1 = (2 * x_) / d;
    if (k0 > k1) continue;
    // Σ_{k0}^{k1} e(k t) with t = dα reduced to [-1/2, 1/2)
    const double beta = phase_mod1(d, alpha);
    const double t = beta - std::nearbyint(beta);
    const auto count = static_cast<double>(k1 - k0 + 1);
    cplx inner;
    if (std::abs(t) < 1e-300) {
      inner = {count, 0.0};
    } else {
      const double ratio = std::sin(std::numbers::pi * count * t) / std::sin(std::numbers::pi * t);
      inner = unit_phase(0.5 * static_cast<double>(k0 + k1) * t) * ratio;
    }
    const std::size_t i = static_cast<std::size_t>(d - d_lo_);
    re[i] = c * inner.real();
    im[i] = c * inner.imag();
  }
  return pairwise_sum(re, im);
}

DivisorSplit split_by_divisor_size(const ValueTable& g_table, std::int64_t x, std::int64_t y) {
  if (x < 1) throw ConfigError("divisor split: X must be >= 1");
  if (y < 1 || y > 2 * x) throw ConfigError("divisor split: need 1 <= Y <= 2X");
  if (!g_table.covers(1, 2 * x)) throw ConfigError("divisor split: g table must cover [1, 2X]");
  return {DivisorRangeSum(g_table, x, 1, y), DivisorRangeSum(g_table, x, y + 1, 2 * x)};
}

double shiu_ratio(int k, std::int64_t x) {
  if (k < 0) throw ConfigError("shiu ratio: k must be >= 0");
  if (x < 3) throw ConfigError("shiu ratio: X must be >= 3");
  const auto d = divisor_k(2, x, 2 * x + 1);
  const int power = 2 * k + 2;
  std::vector<double> terms;
  terms.reserve(d.size());
  for (auto v : d) terms.push_back(std::pow(static_cast<double>(v), power));
  const double xd = static_cast<double>(x);
  const double log_power = std::ldexp(1.0, power) - 1.0;
  return pairwise_sum(terms) / (xd * std::pow(std::log(xd), log_power));
}

std::string describe(const ArcDecomposition& dec) {
  const auto& p = dec.params;
  std::ostringstream os;
  os.precision(12);
  os << "X = " << p.x << "\n"
     << "eps = " << p.eps << "\n"
     << "Q = " << p.q << (p.q_overridden ? " (override)" : "") << "\n"
     << "delta = " << p.delta << "\n"
     << "H = " << p.h << "\n"
     << "centers = " << dec.centers.size() << "\n"
     << "arcs_disjoint = " << (p.arcs_disjoint() ? "true" : "false") << "\n"
     << "major_measure = " << dec.major_measure << "\n"
     << "minor_measure = " << dec.minor_measure() << "\n"
     << "overlap_correction = " << dec.overlap_correction << "\n"
     << "overlap_flagged = " << (dec.overlapping ? "true" : "false") << "\n"
     << "theorem_H_range = [" << p.theorem_h_min() << ", " << p.theorem_h_max() << "]\n"
     << "H_in_theorem_range = " << (p.in_theorem_range() ? "true" : "false") << "\n";
  return os.str();
}

}  // namespace shiftsum

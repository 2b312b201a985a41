#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shiftsum/expsum.hpp"
#include "shiftsum/value_table.hpp"

namespace shiftsum {

// Dissection parameters Q = X^{1/12 - 10ε}, δ = X^{-5/6 - 2ε}.
struct ArcParams {
  std::int64_t x = 1;
  double eps = 0.01;
  std::int64_t q = 1;
  double delta = 0.0;
  std::int64_t h = 1;
  bool q_overridden = false;

  static ArcParams make(std::int64_t x, double eps, std::int64_t h,
                        std::optional<std::int64_t> q_override = std::nullopt);

  bool arcs_disjoint() const;       // δ < 1/(2Q²)
  bool in_theorem_range() const;    // X^{23/24+10ε} <= H <= X^{1-ε}
  double theorem_h_min() const;
  double theorem_h_max() const;
};

struct Fraction {
  std::int64_t a = 0;
  std::int64_t q = 1;
  double value() const { return static_cast<double>(a) / static_cast<double>(q); }
};

// Closed interval on the real line; arcs are stored reduced into [0, 1).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

struct ArcDecomposition {
  ArcParams params;
  std::vector<Fraction> centers;   // 1 <= a <= q <= Q, (a, q) = 1; 1/1 stands for 0
  std::vector<Interval> major;     // disjoint, sorted, inside [0, 1)
  double major_measure = 0.0;      // measure of the union
  double overlap_correction = 0.0; // 2δ·#centers - major_measure
  bool overlapping = false;

  double minor_measure() const { return 1.0 - major_measure; }
};

ArcDecomposition farey_centers(const ArcParams& params);

// Gauss–Legendre nodes on panels no wider than `spacing`, over a union of intervals;
// |S_f|² is sampled once and reused for every h.
class ArcQuadrature {
 public:
  ArcQuadrature(const ValueTable& table, std::int64_t x, const std::vector<Interval>& pieces,
                double spacing, int panel_multiplier = 1);

  // ∫ |S_f(α)|² e(hα) dα over the pieces (real, imaginary).
  cplx integrate(std::int64_t h) const;
  double energy() const { return integrate(0).real(); }
  std::size_t nodes() const { return alpha_.size(); }

 private:
  std::vector<double> alpha_;
  std::vector<double> weighted_s2_;
};

double major_arc_spacing(const ArcParams& params);
double minor_arc_spacing(const ArcParams& params);

struct ArcIntegral {
  std::int64_t h = 0;
  double value = 0.0;       // real part
  double imag_diagnostic = 0.0;
  bool overlap_flagged = false;
};

ArcIntegral major_arc_integral(const ValueTable& table, const ArcDecomposition& dec,
                               std::int64_t h, int panel_multiplier = 1);
std::vector<ArcIntegral> major_arc_integrals(const ValueTable& table, const ArcDecomposition& dec,
                                             std::int64_t h_first, std::int64_t h_last,
                                             int panel_multiplier = 1);

// Pieces of [θ - 1/(2H), θ + 1/(2H)] (mod 1) outside the major arcs.
std::vector<Interval> minor_window(const ArcDecomposition& dec, double theta);
double minor_arc_energy(const ValueTable& table, const ArcDecomposition& dec, double theta,
                        int panel_multiplier = 1);
// Same window, restricted to the major arcs.
double major_window_energy(const ValueTable& table, const ArcDecomposition& dec, double theta);

struct ExpSumCheck {
  std::int64_t a = 0;
  std::int64_t q = 1;
  double alpha = 0.0;
  double observed = 0.0;
  double bound = 0.0;
  bool precondition_ok = true;  // |α| >= X^{-5/6-2ε}
  double ratio() const { return observed / bound; }
};

// |Σ_{m=1}^{X} g(m) e(m(a/q + α))| against q^{1/2+ε²} X^{1+ε²} |α|^{1/2+ε²} + X^{5/6+6ε}.
ExpSumCheck exp_sum_g_check(const ValueTable& g_table, std::int64_t a, std::int64_t q,
                            double alpha, std::int64_t x, double eps);

// Σ_{d in [d_lo, d_hi]} g(d) Σ_{X/d <= k <= 2X/d} e(dkα)
class DivisorRangeSum {
 public:
  DivisorRangeSum(const ValueTable& g_table, std::int64_t x, std::int64_t d_lo,
                  std::int64_t d_hi);
  cplx operator()(double alpha) const;
  bool empty() const { return d_lo_ > d_hi_; }

 private:
  const ValueTable* table_;
  std::int64_t x_, d_lo_, d_hi_;
};

struct DivisorSplit {
  DivisorRangeSum small;  // d <= Y
  DivisorRangeSum large;  // d > Y
};

// Requires 1 <= Y <= 2X and g over [1, 2X].
DivisorSplit split_by_divisor_size(const ValueTable& g_table, std::int64_t x, std::int64_t y);

// Σ_{X<=n<=2X} d_2(n)^{2k+2} / (X (log X)^{2^{2k+2}-1})
double shiu_ratio(int k, std::int64_t x);

std::string describe(const ArcDecomposition& dec);

}  // namespace shiftsum

#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "shiftsum/value_table.hpp"

namespace shiftsum {

using cplx = std::complex<double>;

// n x mod 1 in [0, 1), with the rounding error of the product folded back in.
// Exact enough for |n| < 2^53.
double phase_mod1(std::int64_t n, double x);

// e(t) = exp(2πi t)
cplx unit_phase(double t);

// Fixed-order pairwise (tree) summation.
double pairwise_sum(std::span<const double> v);
cplx pairwise_sum(std::span<const double> re, std::span<const double> im);

// Coefficients c_i attached to frequencies first + i:
//   T(α) = Σ_i c_i e((first + i) α)
struct TrigPoly {
  std::int64_t first = 0;
  std::span<const double> coeffs;
};

// S_f over [X, 2X] taken from a table that covers it.
TrigPoly exponential_sum_window(const ValueTable& table, std::int64_t x);

cplx eval_trig(const TrigPoly& poly, double alpha);

// S_f(α) = Σ_{X <= n <= 2X} f(n) e(nα)
cplx eval_S(const ValueTable& table, std::int64_t x, double alpha);

// T(α0 + j step) for j = 0..count-1 by the chirp (Bluestein) factorization
//   e(n j Δ) = e(n²Δ/2) e(j²Δ/2) e(-(j-n)²Δ/2).
// The chirp spectrum depends only on (step, count) and is reused across α0.
class ChirpGrid {
 public:
  ChirpGrid(TrigPoly poly, double step, std::int64_t count);
  ~ChirpGrid();
  ChirpGrid(const ChirpGrid&) = delete;
  ChirpGrid& operator=(const ChirpGrid&) = delete;

  std::vector<cplx> evaluate(double alpha0) const;
  std::size_t transform_length() const { return length_; }

 private:
  struct Plans;
  TrigPoly poly_;
  double step_;
  std::int64_t count_;
  std::size_t length_ = 0;
  std::unique_ptr<Plans> plans_;
};

std::vector<cplx> eval_S_grid(const ValueTable& table, std::int64_t x, double alpha0,
                              double step, std::int64_t count);

}  // namespace shiftsum

#include "shiftsum/expsum.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <string>

#include "fftw_lock.hpp"
#include "shiftsum/error.hpp"

namespace shiftsum {

double phase_mod1(std::int64_t n, double x) {
  const auto nd = static_cast<double>(n);
  const double p = nd * x;
  const double err = std::fma(nd, x, -p);
  double r = (p - std::floor(p)) + err;
  r -= std::floor(r);
  return r >= 1.0 ? 0.0 : r;
}

cplx unit_phase(double t) {
  const double r = t - std::nearbyint(t);
  const double a = 2.0 * std::numbers::pi * r;
  return {std::cos(a), std::sin(a)};
}

namespace {

constexpr std::size_t kLeaf = 8;

double tree_sum(const double* v, std::size_t n) {
  if (n <= kLeaf) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return tree_sum(v, half) + tree_sum(v + half, n - half);
}

double add_phases(double a, double b) {
  double r = a + b;
  return r >= 1.0 ? r - 1.0 : r;
}

constexpr double kExactIntLimit = 9.0e15;  // < 2^53

}  // namespace

double pairwise_sum(std::span<const double> v) { return tree_sum(v.data(), v.size()); }

cplx pairwise_sum(std::span<const double> re, std::span<const double> im) {
  return {pairwise_sum(re), pairwise_sum(im)};
}

TrigPoly exponential_sum_window(const ValueTable& table, std::int64_t x) {
  if (x < 1) throw ConfigError("exponential sum needs X >= 1");
  if (!table.covers(x, 2 * x))
    throw ConfigError("exponential sum: table [" + std::to_string(table.lo) + ", " +
                      std::to_string(table.hi) + ") does not cover [X, 2X] for X = " +
                      std::to_string(x));
  return {x, table.f_slice(x, 2 * x)};
}

cplx eval_trig(const TrigPoly& poly, double alpha) {
  const std::size_t n = poly.coeffs.size();
  std::vector<double> re(n), im(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double c = poly.coeffs[i];
    if (c == 0.0) {
      re[i] = im[i] = 0.0;
      continue;
    }
    const cplx e = unit_phase(phase_mod1(poly.first + static_cast<std::int64_t>(i), alpha));
    re[i] = c * e.real();
    im[i] = c * e.imag();
  }
  return pairwise_sum(re, im);
}

cplx eval_S(const ValueTable& table, std::int64_t x, double alpha) {
  return eval_trig(exponential_sum_window(table, x), alpha);
}

struct ChirpGrid::Plans {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
  fftw_complex* chirp = nullptr;  // spectrum of v_k = e(-k²Δ/2)
};

ChirpGrid::ChirpGrid(TrigPoly poly, double step, std::int64_t count)
    : poly_(poly), step_(step), count_(count) {
  if (count < 1) throw ConfigError("chirp grid: count must be >= 1");
  if (count > 1 && step == 0.0) throw ConfigError("chirp grid: step = 0 with count > 1");
  if (poly_.coeffs.empty()) throw ConfigError("chirp grid: empty trigonometric polynomial");
  if (count == 1) return;
  const auto n = static_cast<std::int64_t>(poly_.coeffs.size());
  const double span_max = static_cast<double>(std::max(n, count));
  if (span_max * span_max > kExactIntLimit ||
      static_cast<double>(std::abs(poly_.first)) * static_cast<double>(count) > kExactIntLimit)
    throw CapExceeded("chirp grid: indices too large for exact phase reduction");
  std::size_t len = 1;
  while (len < static_cast<std::size_t>(n + count - 1)) len <<= 1;
  if (len > (std::size_t{1} << 28)) throw CapExceeded("chirp grid: transform length overflow");
  length_ = len;

  plans_ = std::make_unique<Plans>();
  const double half_step = 0.5 * step_;
  {
    std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
    plans_->chirp = fftw_alloc_complex(len);
    plans_->forward = fftw_plan_dft_1d(static_cast<int>(len), plans_->chirp, plans_->chirp,
                                       FFTW_FORWARD, FFTW_ESTIMATE);
    plans_->inverse = fftw_plan_dft_1d(static_cast<int>(len), plans_->chirp, plans_->chirp,
                                       FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_complex* w = plans_->chirp;
  for (std::size_t i = 0; i < len; ++i) w[i][0] = w[i][1] = 0.0;
  for (std::int64_t k = -(n - 1); k <= count - 1; ++k) {
    const cplx v = unit_phase(-phase_mod1(k * k, half_step));
    const std::size_t pos = k >= 0 ? static_cast<std::size_t>(k)
                                   : len - static_cast<std::size_t>(-k);
    w[pos][0] = v.real();
    w[pos][1] = v.imag();
  }
  fftw_execute_dft(plans_->forward, w, w);
}

ChirpGrid::~ChirpGrid() {
  if (!plans_) return;
  std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
  fftw_destroy_plan(plans_->forward);
  fftw_destroy_plan(plans_->inverse);
  fftw_free(plans_->chirp);
}

std::vector<cplx> ChirpGrid::evaluate(double alpha0) const {
  if (count_ == 1) return {eval_trig(poly_, alpha0)};
  const std::size_t len = length_;
  const auto n = static_cast<std::int64_t>(poly_.coeffs.size());
  const double half_step = 0.5 * step_;
  fftw_complex* u = fftw_alloc_complex(len);
  for (std::size_t i = 0; i < len; ++i) u[i][0] = u[i][1] = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    const double c = poly_.coeffs[static_cast<std::size_t>(i)];
    if (c == 0.0) continue;
    const cplx e = unit_phase(add_phases(phase_mod1(i, alpha0), phase_mod1(i * i, half_step)));
    u[i][0] = c * e.real();
    u[i][1] = c * e.imag();
  }
  fftw_execute_dft(plans_->forward, u, u);
  const fftw_complex* w = plans_->chirp;
  for (std::size_t i = 0; i < len; ++i) {
    const double re = u[i][0] * w[i][0] - u[i][1] * w[i][1];
    const double im = u[i][0] * w[i][1] + u[i][1] * w[i][0];
    u[i][0] = re;
    u[i][1] = im;
  }
  fftw_execute_dft(plans_->inverse, u, u);

  std::vector<cplx> out(static_cast<std::size_t>(count_));
  const double scale = 1.0 / static_cast<double>(len);
  const double base = phase_mod1(poly_.first, alpha0);
  for (std::int64_t j = 0; j < count_; ++j) {
    const double ph = add_phases(base, add_phases(phase_mod1(poly_.first * j, step_),
                                                  phase_mod1(j * j, half_step)));
    const cplx c(u[j][0] * scale, u[j][1] * scale);
    out[static_cast<std::size_t>(j)] = unit_phase(ph) * c;
  }
  fftw_free(u);
  return out;
}

std::vector<cplx> eval_S_grid(const ValueTable& table, std::int64_t x, double alpha0,
                              double step, std::int64_t count) {
  const ChirpGrid grid(exponential_sum_window(table, x), step, count);
  return grid.evaluate(alpha0);
}

}  // namespace shiftsum

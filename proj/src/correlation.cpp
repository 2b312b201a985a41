#include "shiftsum/correlation.hpp"

#include <fftw3.h>

#include <cmath>
#include <string>

#include "fftw_lock.hpp"
#include "shiftsum/error.hpp"
#include "shiftsum/expsum.hpp"

namespace shiftsum {

std::string to_string(CorrelationMethod m) { return m == CorrelationMethod::Fft ? "fft" : "naive"; }

CorrelationMethod parse_correlation_method(const std::string& text) {
  if (text == "fft") return CorrelationMethod::Fft;
  if (text == "naive") return CorrelationMethod::Naive;
  throw ConfigError("unknown correlation method '" + text + "' (expected fft or naive)");
}

namespace {

void check_inputs(const ValueTable& table, std::int64_t x, std::int64_t big_h) {
  if (x < 1) throw ConfigError("correlation: X must be >= 1");
  if (big_h < 0) throw ConfigError("correlation: H must be >= 0");
  if (!table.covers(x, 2 * x + big_h))
    throw ConfigError("correlation: table [" + std::to_string(table.lo) + ", " +
                      std::to_string(table.hi) + ") does not cover [X, 2X + H] = [" +
                      std::to_string(x) + ", " + std::to_string(2 * x + big_h) + "]");
}

// Integer families: every sum is an integer; anything else means lost precision.
void snap_to_integers(std::vector<double>& sums) {
  for (std::size_t h = 0; h < sums.size(); ++h) {
    const double r = std::nearbyint(sums[h]);
    if (std::abs(sums[h] - r) >= 1e-6)
      throw InvariantViolation("correlation: sum at h = " + std::to_string(h) +
                               " is not an integer (" + std::to_string(sums[h]) + ")");
    sums[h] = r;
  }
}

}  // namespace

CorrelationResult correlate_naive(const ValueTable& table, std::int64_t x, std::int64_t big_h) {
  check_inputs(table, x, big_h);
  CorrelationResult out{x, big_h, std::vector<double>(static_cast<std::size_t>(big_h + 1)),
                        CorrelationMethod::Naive};
  const auto len = static_cast<std::size_t>(x + 1);
  if (table.family.integer_valued()) {
    for (std::int64_t h = 0; h <= big_h; ++h) {
      __int128 s = 0;
      for (std::int64_t n = x; n <= 2 * x; ++n)
        s += static_cast<__int128>(static_cast<std::int64_t>(table.f(n))) *
             static_cast<std::int64_t>(table.f(n + h));
      out.sums[static_cast<std::size_t>(h)] = static_cast<double>(s);
    }
    return out;
  }
  std::vector<double> terms(len);
  for (std::int64_t h = 0; h <= big_h; ++h) {
    for (std::int64_t n = x; n <= 2 * x; ++n)
      terms[static_cast<std::size_t>(n - x)] = table.f(n) * table.f(n + h);
    out.sums[static_cast<std::size_t>(h)] = pairwise_sum(terms);
  }
  return out;
}

CorrelationResult correlate_fft(const ValueTable& table, std::int64_t x, std::int64_t big_h) {
  check_inputs(table, x, big_h);
  const auto need = static_cast<std::size_t>(2 * (x + big_h + 1));
  std::size_t len = 1;
  while (len < need) len <<= 1;
  if (len > kMaxCorrelationLength)
    throw CapExceeded("correlation: transform length " + std::to_string(len) + " exceeds cap " +
                      std::to_string(kMaxCorrelationLength));
  const std::size_t bins = len / 2 + 1;

  double* a = fftw_alloc_real(len);
  double* b = fftw_alloc_real(len);
  fftw_complex* fa = fftw_alloc_complex(bins);
  fftw_complex* fb = fftw_alloc_complex(bins);
  fftw_plan pa, pb, inv;
  {
    std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
    const int n = static_cast<int>(len);
    pa = fftw_plan_dft_r2c_1d(n, a, fa, FFTW_ESTIMATE);
    pb = fftw_plan_dft_r2c_1d(n, b, fb, FFTW_ESTIMATE);
    inv = fftw_plan_dft_c2r_1d(n, fa, a, FFTW_ESTIMATE);
  }
  for (std::size_t i = 0; i < len; ++i) a[i] = b[i] = 0.0;
  for (std::int64_t n = x; n <= 2 * x; ++n) a[n - x] = table.f(n);
  for (std::int64_t n = x; n <= 2 * x + big_h; ++n) b[n - x] = table.f(n);
  fftw_execute(pa);
  fftw_execute(pb);
  // conj(A) B transforms back to Σ_i a_i b_{i+h}
  for (std::size_t k = 0; k < bins; ++k) {
    const double re = fa[k][0] * fb[k][0] + fa[k][1] * fb[k][1];
    const double im = fa[k][0] * fb[k][1] - fa[k][1] * fb[k][0];
    fa[k][0] = re;
    fa[k][1] = im;
  }
  fftw_execute(inv);

  CorrelationResult out{x, big_h, std::vector<double>(static_cast<std::size_t>(big_h + 1)),
                        CorrelationMethod::Fft};
  const double scale = 1.0 / static_cast<double>(len);
  for (std::int64_t h = 0; h <= big_h; ++h) out.sums[static_cast<std::size_t>(h)] = a[h] * scale;
  {
    std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(pa);
    fftw_destroy_plan(pb);
    fftw_destroy_plan(inv);
  }
  fftw_free(a);
  fftw_free(b);
  fftw_free(fa);
  fftw_free(fb);
  if (table.family.integer_valued()) snap_to_integers(out.sums);
  return out;
}

CorrelationResult correlate(const ValueTable& table, std::int64_t x, std::int64_t big_h,
                            CorrelationMethod method) {
  return method == CorrelationMethod::Fft ? correlate_fft(table, x, big_h)
                                          : correlate_naive(table, x, big_h);
}

}  // namespace shiftsum

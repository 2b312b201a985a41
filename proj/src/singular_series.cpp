#include "shiftsum/singular_series.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "shiftsum/arith.hpp"
#include "shiftsum/error.hpp"

namespace shiftsum {

SingularSeriesTable::SingularSeriesTable(DqTable dq, std::int64_t q_b)
    : dq_(std::move(dq)), q_b_(q_b) {
  if (q_b_ < 1 || q_b_ > dq_.q_trunc)
    throw ConfigError("singular series: need 1 <= Q_B <= Q_trunc (Q_B = " +
                      std::to_string(q_b_) + ", Q_trunc = " + std::to_string(dq_.q_trunc) + ")");
  if (!dq_.family.real_valued())
    throw ConfigError("singular series is implemented for real-valued families only");
  const std::int64_t q_max = dq_.q_trunc;
  const auto mp = mobius_phi_tables(q_max + 1);
  dq2_.assign(static_cast<std::size_t>(q_max + 1), 0.0);
  offsets_.assign(static_cast<std::size_t>(q_max + 2), 0);
  for (std::int64_t q = 1; q <= q_max; ++q) {
    const double d = dq_.at(q);
    dq2_[static_cast<std::size_t>(q)] = d * d;
    tail_constant_ = std::max(tail_constant_, 2.0 * (d * q) * (d * q));
    offsets_[static_cast<std::size_t>(q + 1)] = offsets_[static_cast<std::size_t>(q)] +
                                                static_cast<std::size_t>(q);
  }
  residues_.resize(offsets_.back());
  for (std::int64_t q = 1; q <= q_max; ++q) {
    const std::size_t base = offsets_[static_cast<std::size_t>(q)];
    for (std::int64_t r = 0; r < q; ++r) {
      const std::int64_t g = std::gcd(q, r);
      const auto m = static_cast<std::size_t>(q / g);
      residues_[base + static_cast<std::size_t>(r)] = static_cast<std::int32_t>(
          mp.mu[m] * (mp.phi[static_cast<std::size_t>(q)] / mp.phi[m]));
    }
  }
}

double SingularSeriesTable::b_h_truncated(std::int64_t h, std::int64_t q_cut) const {
  if (h < 1) throw ConfigError("B_h is defined for h >= 1 (got h = " + std::to_string(h) + ")");
  if (q_cut < 1 || q_cut > dq_.q_trunc)
    throw ConfigError("B_h truncation outside the D_q table");
  double sum = 0.0;
  for (std::int64_t q = 1; q <= q_cut; ++q) {
    const int c = residues_[offsets_[static_cast<std::size_t>(q)] + static_cast<std::size_t>(h % q)];
    sum += c * dq2_[static_cast<std::size_t>(q)];
  }
  return sum;
}

SingularSeriesTable::Value SingularSeriesTable::b_h(std::int64_t h) const {
  return {b_h_truncated(h, q_b_),
          tail_constant_ * static_cast<double>(divisor_count(h)) / static_cast<double>(q_b_)};
}

std::vector<BhRow> b_h_sweep(const SingularSeriesTable& table, std::int64_t big_h, int workers) {
  if (big_h < 1) throw ConfigError("b_h_sweep: H must be >= 1");
  std::vector<BhRow> rows(static_cast<std::size_t>(big_h));
  auto work = [&](std::int64_t first, std::int64_t last) {
    for (std::int64_t h = first; h < last; ++h) {
      const auto v = table.b_h(h);
      rows[static_cast<std::size_t>(h - 1)] = {h, v.value, v.tail_bound};
    }
  };
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(std::min<std::int64_t>(big_h, 256))));
  if (n == 1) {
    work(1, big_h + 1);
    return rows;
  }
  std::vector<std::thread> pool;
  const std::int64_t chunk = (big_h + n - 1) / n;
  for (int i = 0; i < n; ++i) {
    const std::int64_t first = 1 + i * chunk;
    const std::int64_t last = std::min(big_h + 1, first + chunk);
    if (first < last) pool.emplace_back(work, first, last);
  }
  for (auto& t : pool) t.join();
  return rows;
}

}  // namespace shiftsum

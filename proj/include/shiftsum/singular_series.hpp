#pragma once

#include <cstdint>
#include <vector>

#include "shiftsum/lfunc.hpp"

namespace shiftsum {

// B_h truncated at Q_B:  Σ_{q <= Q_B} c_q(h) D_q^2.
class SingularSeriesTable {
 public:
  // Requires 1 <= q_b <= dq.q_trunc. The tail constant is 2 max_{q <= Q_trunc} (q D_q)^2,
  // which with |c_q(h)| <= (q, h) bounds the discarded tail by tail_constant d_2(h) / Q_B.
  SingularSeriesTable(DqTable dq, std::int64_t q_b);

  const DqTable& dq() const { return dq_; }
  std::int64_t q_b() const { return q_b_; }
  double tail_constant() const { return tail_constant_; }

  struct Value {
    double value = 0.0;
    double tail_bound = 0.0;
  };
  Value b_h(std::int64_t h) const;
  // Same sum with a different truncation q_cut <= Q_trunc.
  double b_h_truncated(std::int64_t h, std::int64_t q_cut) const;

 private:
  DqTable dq_;
  std::int64_t q_b_;
  double tail_constant_ = 0.0;
  std::vector<double> dq2_;
  // c_q(r) for 0 <= r < q, concatenated; offsets_[q] indexes residue 0.
  std::vector<std::int32_t> residues_;
  std::vector<std::size_t> offsets_;
};

struct BhRow {
  std::int64_t h = 0;
  double value = 0.0;
  double tail_bound = 0.0;
};

// b_h for h = 1..H, split across `workers` threads; rows are independent of the split.
std::vector<BhRow> b_h_sweep(const SingularSeriesTable& table, std::int64_t big_h,
                             int workers = 1);

}  // namespace shiftsum

#ifndef SCHROLAB_SEQUENCES_HPP
#define SCHROLAB_SEQUENCES_HPP

#include <cstddef>
#include <utility>
#include <vector>

namespace schrolab {

/// Finite strictly decreasing time sequence in (0,1) with its intended
/// weak-Lorentz class parameter r.
struct TimeSequence {
  std::vector<double> values;
  double r = 1.0;

  void validate() const;  // throws std::invalid_argument on violation
};

/// beta = 2 / ((N+1) r / N + 1)
double sequence_beta(double r, int N);

struct BlockSpec {
  double r = 0.5;
  int N = 2;
  double R1 = 2.0;
  int block_count = 1;
};

struct BlockInfo {
  double R;            // scale parameter of the block
  double interval_lo;  // R^{-beta(r+1)}
  double interval_hi;  // R^{-beta}
  int count;           // lattice points in [lo, hi)
  bool skipped;        // true when the interval held no lattice point
};

struct BlockSequence {
  TimeSequence sequence;
  std::vector<BlockInfo> blocks;
};

/// Per block n: lattice R_n^{-beta(r+1)} Z intersected with
/// [R_n^{-beta(r+1)}, R_n^{-beta}), enumerated decreasing; R_{n+1} is the
/// smallest 2^{m/8} with R_{n+1}^{-beta} <= (1/2) R_n^{-beta(r+1)}.
BlockSequence build_block_sequence(const BlockSpec& spec);

/// t_n = (n+1)^{-1/r}, n = 1..count
TimeSequence build_power_sequence(double r, int count);

struct WeakLrReport {
  double quasinorm = 0.0;      // max_n n * t_n^r
  double witness_b = 0.0;      // t_n at the maximizing index
  std::size_t witness_index = 0;  // 1-based
  double dyadic_sup = 0.0;     // sup_b b^r #{m: b < t_m <= 2b}
};

/// sup_{b>0} b^r #{n: t_n > b}, exact for finite decreasing sequences.
WeakLrReport weak_lr_quasinorm(const TimeSequence& seq, double r);

/// sup over breakpoints b in {t_n} union {t_n/2} of b^r #{m: b < t_m <= 2b}.
double dyadic_count_bound(const TimeSequence& seq, double r);

/// Threshold tau = 2^{-2k/((N+1)r/N+1)}; first part holds t_n >= tau,
/// second the rest. Exact partition.
std::pair<TimeSequence, TimeSequence> split_at_threshold(
    const TimeSequence& seq, double k, double r, int N);

}  // namespace schrolab

#endif

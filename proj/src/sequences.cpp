#include "schrolab/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace schrolab {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

void TimeSequence::validate() const {
  for (std::size_t i = 0; i < values.size(); ++i) {
    require(values[i] > 0.0 && values[i] < 1.0,
            "time sequence values must lie in (0,1)");
    if (i > 0)
      require(values[i] < values[i - 1],
              "time sequence must be strictly decreasing");
  }
}

double sequence_beta(double r, int N) {
  require(r > 0.0, "r must be positive");
  require(N >= 2, "N must be >= 2");
  return 2.0 / ((N + 1) * r / N + 1.0);
}

BlockSequence build_block_sequence(const BlockSpec& spec) {
  require(spec.r > 0.0, "block spec: r must be positive");
  require(spec.N >= 2, "block spec: N must be >= 2");
  require(spec.R1 >= 2.0, "block spec: R1 must be >= 2");
  require(spec.block_count >= 1, "block spec: need at least one block");

  const double beta = sequence_beta(spec.r, spec.N);
  BlockSequence out;
  double R = spec.R1;
  for (int n = 0; n < spec.block_count; ++n) {
    BlockInfo info;
    info.R = R;
    const double gap = std::pow(R, -beta * (spec.r + 1.0));
    info.interval_lo = gap;
    info.interval_hi = std::pow(R, -beta);
    // multiples m*gap with gap <= m*gap < R^{-beta}
    const int m_max =
        static_cast<int>(std::ceil(info.interval_hi / gap)) - 1;
    info.count = std::max(0, m_max);
    info.skipped = info.count == 0;
    for (int m = info.count; m >= 1; --m)
      out.sequence.values.push_back(m * gap);
    out.blocks.push_back(info);

    // smallest R' = 2^{m/8} with (R')^{-beta} <= gap/2
    const double m_min = 8.0 * (1.0 - std::log2(gap)) / beta;
    R = std::exp2(std::ceil(m_min) / 8.0);
  }
  out.sequence.r = spec.r;
  out.sequence.validate();
  return out;
}

TimeSequence build_power_sequence(double r, int count) {
  require(r > 0.0, "r must be positive");
  require(count >= 1, "count must be >= 1");
  TimeSequence seq;
  seq.r = r;
  seq.values.reserve(count);
  for (int n = 1; n <= count; ++n)
    seq.values.push_back(std::pow(n + 1.0, -1.0 / r));
  seq.validate();
  return seq;
}

WeakLrReport weak_lr_quasinorm(const TimeSequence& seq, double r) {
  require(!seq.values.empty(), "weak_lr_quasinorm: empty sequence");
  require(r > 0.0, "r must be positive");
  seq.validate();
  WeakLrReport rep;
  for (std::size_t n = 0; n < seq.values.size(); ++n) {
    const double v = (n + 1) * std::pow(seq.values[n], r);
    if (v > rep.quasinorm) {
      rep.quasinorm = v;
      rep.witness_b = seq.values[n];
      rep.witness_index = n + 1;
    }
  }
  rep.dyadic_sup = dyadic_count_bound(seq, r);
  return rep;
}

double dyadic_count_bound(const TimeSequence& seq, double r) {
  require(!seq.values.empty(), "dyadic_count_bound: empty sequence");
  require(r > 0.0, "r must be positive");
  seq.validate();
  const auto& t = seq.values;  // decreasing
  std::vector<double> breakpoints;
  breakpoints.reserve(2 * t.size());
  for (double v : t) {
    breakpoints.push_back(v);
    breakpoints.push_back(v / 2.0);
  }
  double sup = 0.0;
  for (double b : breakpoints) {
    // count of t_m with b < t_m <= 2b; t sorted decreasing
    auto lo = std::lower_bound(t.begin(), t.end(), 2.0 * b,
                               std::greater<double>());  // first t <= 2b
    auto hi = std::upper_bound(t.begin(), t.end(), b,
                               std::greater<double>());  // first t <= b
    const auto count = static_cast<double>(hi - lo);
    sup = std::max(sup, std::pow(b, r) * count);
  }
  return sup;
}

std::pair<TimeSequence, TimeSequence> split_at_threshold(
    const TimeSequence& seq, double k, double r, int N) {
  require(k > 0.0, "k must be positive");
  seq.validate();
  const double tau = std::exp2(-2.0 * k / ((N + 1) * r / N + 1.0));
  TimeSequence a1, a2;
  a1.r = a2.r = seq.r;
  for (double v : seq.values)
    (v >= tau ? a1 : a2).values.push_back(v);
  return {std::move(a1), std::move(a2)};
}

}  // namespace schrolab

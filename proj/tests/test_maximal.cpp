#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "schrolab/maximal.hpp"

using namespace schrolab;

namespace {

SpectralField random_field(int dim, int count, std::uint64_t seed,
                           double freq_scale = 3.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<FrequencyAtom> atoms;
  for (int i = 0; i < count; ++i) {
    std::vector<double> xi(dim);
    for (auto& v : xi) v = freq_scale * g(rng);
    atoms.push_back({xi, Complex(g(rng), g(rng)), 1.0});
  }
  return SpectralField(dim, std::move(atoms));
}

}  // namespace

TEST_CASE("maximal profile equals the brute-force pointwise sup") {
  const auto f = random_field(2, 40, 3);
  const std::vector<double> times{0.05, 0.11, 0.23};
  const SpatialGrid grid({0.0, 0.0}, 1.0, {0.25, 0.25});
  for (const auto& kind :
       {SymbolKind::elliptic(), SymbolKind::hyperbolic2d(),
        SymbolKind::nonelliptic({+1, -1})}) {
    const auto prof = maximal_profile(f, times, kind, grid);
    REQUIRE(prof.sup_values.size() == grid.total_count());
    std::size_t cell = 0;
    for (int i = 0; i < grid.axis_count(0); ++i)
      for (int l = 0; l < grid.axis_count(1); ++l, ++cell) {
        const std::vector<double> x{grid.coordinate(0, i),
                                    grid.coordinate(1, l)};
        double want = 0.0;
        int want_idx = 0;
        for (std::size_t ti = 0; ti < times.size(); ++ti) {
          const double v = std::abs(evaluate(f, x, times[ti], kind));
          if (v > want) {
            want = v;
            want_idx = static_cast<int>(ti);
          }
        }
        CHECK(prof.sup_values[cell] == doctest::Approx(want).epsilon(1e-11));
        CHECK(prof.argmax_time_index[cell] == want_idx);
      }
  }
}

TEST_CASE("interval sampling enforces the phase-resolution step") {
  const auto f = random_field(2, 10, 5);
  const auto kind = SymbolKind::elliptic();
  const SpatialGrid grid({0.0, 0.0}, 1.0, {0.5, 0.5});
  const double ok = max_interval_step(f, kind);
  CHECK_NOTHROW((void)maximal_profile_interval(f, 0.0, 0.01, ok, kind, grid));
  CHECK_THROWS_AS(
      (void)maximal_profile_interval(f, 0.0, 0.01, 4.0 * ok, kind, grid),
      std::invalid_argument);
  // sampled sup dominates any single admissible time in the interval
  const auto prof = maximal_profile_interval(f, 0.0, 0.01, ok, kind, grid);
  const auto single = maximal_profile(
      f, std::vector<double>{prof.times[prof.times.size() / 2]}, kind, grid);
  for (std::size_t i = 0; i < prof.sup_values.size(); ++i)
    CHECK(prof.sup_values[i] >= single.sup_values[i] - 1e-12);
}

TEST_CASE("ball l2 needs full coverage") {
  const auto f = random_field(2, 8, 9);
  const SpatialGrid grid({0.0, 0.0}, 1.0, {0.125, 0.125});
  const auto prof =
      maximal_profile(f, std::vector<double>{0.1}, SymbolKind::elliptic(), grid);
  const std::vector<double> origin{0.0, 0.0};
  CHECK(ball_l2(prof, origin, 0.5) > 0.0);
  CHECK(ball_l2(prof, origin, 0.5) <= ball_l2(prof, origin, 1.0));
  CHECK_THROWS_AS((void)ball_l2(prof, origin, 2.0), std::invalid_argument);
}

TEST_CASE("regularity thresholds") {
  const double inf = std::numeric_limits<double>::infinity();
  using F = ThresholdFamily;
  auto s0 = [](F f, int N, double r, double a = 2.0) {
    return threshold_s0({f, N, r, a});
  };
  // continuous limits
  CHECK(s0(F::Schrodinger, 1, inf) == doctest::Approx(0.25));
  CHECK(s0(F::Schrodinger, 2, inf) == doctest::Approx(1.0 / 3.0));
  CHECK(s0(F::Nonelliptic, 2, inf) == doctest::Approx(0.5));
  // sequence-dependent branch
  CHECK(s0(F::Schrodinger, 1, 1.0) == doctest::Approx(0.25));
  CHECK(s0(F::Schrodinger, 2, 0.5) == doctest::Approx(2.0 / 7.0));
  CHECK(s0(F::Nonelliptic, 2, 1.0) == doctest::Approx(0.5));
  CHECK(s0(F::Nonelliptic, 2, 0.5) == doctest::Approx(1.0 / 3.0));
  // crossover where both branches agree: r/( (N+1)r/N + 1 ) = N/(2(N+1))
  CHECK(s0(F::Schrodinger, 1, 1.0) ==
        doctest::Approx(s0(F::Schrodinger, 1, 2.0)));
  // fractional
  CHECK(s0(F::Fractional, 1, inf, 1.5) == doctest::Approx(0.25));
  CHECK(s0(F::Fractional, 1, 0.5, 1.5) == doctest::Approx(0.1875));
  CHECK(s0(F::Fractional, 1, 0.5, 0.5) == doctest::Approx(0.0625));
  CHECK(s0(F::Fractional, 1, inf, 0.5) == doctest::Approx(0.125));
  CHECK_THROWS_AS((void)s0(F::Fractional, 2, 0.5, 0.5), std::invalid_argument);

  // inverse map round trip
  for (double s : {0.1, 0.25, 0.4}) {
    const double r = threshold_inverse_r(s);
    CHECK(s0(F::Nonelliptic, 2, r) == doctest::Approx(s).epsilon(1e-12));
  }
  CHECK_THROWS_AS((void)threshold_inverse_r(0.5), std::invalid_argument);
}

TEST_CASE("power law fit recovers synthetic exponents") {
  std::vector<std::pair<double, double>> rows;
  for (double x : {2.0, 4.0, 8.0, 16.0, 32.0})
    rows.emplace_back(x, 3.0 * std::pow(x, -1.7));
  const auto [slope, se] = fit_power_law(rows);
  CHECK(slope == doctest::Approx(-1.7).epsilon(1e-12));
  CHECK(se == doctest::Approx(0.0).epsilon(1e-10));
  rows.resize(2);
  CHECK_THROWS_AS((void)fit_power_law(rows), std::invalid_argument);
}

TEST_CASE("focusing ratio matches a direct grid computation") {
  FocusingSpec spec;
  spec.N = 2;
  spec.r = 0.5;
  spec.eps = 0.01;
  spec.R = 16.0;
  spec.lattice_scale = 4.0;
  spec.freq_cutoff = 30.0;
  const double s = 0.0;
  const double got = focusing_sweep_ratio(spec, s, 60);

  // independent dense evaluation of the same quotient
  const auto datum = build_focusing(spec);
  const auto times = focusing_time_sequence(spec);
  const auto kind = SymbolKind::elliptic();
  const int nx1 = 60;
  const int nx2 = std::max(1200, static_cast<int>(std::ceil(10.0 * 30.0)));
  double sum = 0.0;
  const double dx1 = 2.0 / (nx1 - 1), dx2 = 2.0 / (nx2 - 1);
  for (int i = 0; i < nx1; ++i) {
    const double x1 = -1.0 + i * dx1;
    for (int l = 0; l < nx2; ++l) {
      const double x2 = -1.0 + l * dx2;
      if (x1 * x1 + x2 * x2 > 1.0) continue;
      double sup = 0.0;
      for (double t : times.values) {
        const double v =
            std::abs(evaluate(datum.f1, std::vector<double>{x1},
                              t / (2.0 * std::acos(-1.0)), kind)) *
            std::abs(evaluate(datum.f2, std::vector<double>{x2},
                              t / (2.0 * std::acos(-1.0)), kind));
        sup = std::max(sup, v);
      }
      sum += sup * sup * dx1 * dx2;
    }
  }
  const double want = std::sqrt(sum) / sobolev_norm(datum.field, s);
  CHECK(got == doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("interval experiment rejects elliptic symbols") {
  CHECK_THROWS_AS(
      (void)interval_sup_experiment(8.0, 1.0 / 64, SymbolKind::elliptic(), 16),
      std::invalid_argument);
  const double v = interval_sup_experiment(
      8.0, 1.0 / 64, SymbolKind::nonelliptic({+1, -1}), 16);
  CHECK(v > 0.0);
  CHECK(std::isfinite(v));
}

TEST_CASE("annulus trials report a normalized maximal ratio") {
  const auto result = annulus_scaling_experiment(3.0, 4.0, 3, 42);
  CHECK(result.rows.size() == 3);
  for (const auto& [trial, ratio] : result.rows) {
    CHECK(ratio > 0.0);
    CHECK(std::isfinite(ratio));
  }
  CHECK(result.fitted_exponent > 0.0);
}

#ifndef SCHROLAB_MAXIMAL_HPP
#define SCHROLAB_MAXIMAL_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "schrolab/counterexamples.hpp"
#include "schrolab/sequences.hpp"
#include "schrolab/spectral.hpp"

namespace schrolab {

struct MaximalProfile {
  SpatialGrid grid;
  std::vector<double> sup_values;        // one per grid cell, axis 0 slowest
  std::vector<int> argmax_time_index;    // index into times
  std::vector<double> times;             // the sampled time set
};

/// Pointwise sup over the given times of |e^{it sigma(D)} f| on the grid.
MaximalProfile maximal_profile(const SpectralField& field,
                               std::span<const double> times,
                               const SymbolKind& kind, const SpatialGrid& grid);
MaximalProfile maximal_profile(const SpectralField& field,
                               const TimeSequence& times,
                               const SymbolKind& kind, const SpatialGrid& grid);

/// Continuum interval (t0, t1] sampled with the given step; requires
/// step <= pi / (4 max_atoms |sigma(xi)|) so any atom phase moves < pi/4
/// between samples. Violations throw naming the required step.
MaximalProfile maximal_profile_interval(const SpectralField& field, double t0,
                                        double t1, double step,
                                        const SymbolKind& kind,
                                        const SpatialGrid& grid);

/// Largest admissible sampling step for the field/symbol pair.
double max_interval_step(const SpectralField& field, const SymbolKind& kind);

/// Grid with step = min(1/64, 1/(8 max|xi|)) covering [-half_width,
/// half_width]^dim.
SpatialGrid default_profile_grid(const SpectralField& field,
                                 double half_width = 1.0);

/// Riemann sum of sup_values^2 over grid cells with centers in the ball,
/// square-rooted. Throws when the grid does not cover the ball.
double ball_l2(const MaximalProfile& profile, std::span<const double> center,
               double radius);

// --- sharp thresholds -------------------------------------------------------

enum class ThresholdFamily { Schrodinger, Fractional, Nonelliptic };

struct ThresholdQuery {
  ThresholdFamily family = ThresholdFamily::Schrodinger;
  int N = 2;
  double r = std::numeric_limits<double>::infinity();  // infinity = continuous
  double a = 2.0;  // Fractional order
};

/// Least admissible regularity for pointwise convergence. Throws for the
/// open case (Fractional with 0 < a < 1 and N >= 2).
double threshold_s0(const ThresholdQuery& q);

/// r(s) = s / (1 - s) for 0 < s < 1/2; inverts the nonelliptic threshold.
double threshold_inverse_r(double s);

// --- sweeps and fits --------------------------------------------------------

struct SweepResult {
  std::vector<std::pair<double, double>> rows;  // (parameter, measured ratio)
  double fitted_exponent = 0.0;
  double stderr_ = 0.0;
};

/// Least-squares slope of log y against log x. Requires >= 3 rows of
/// positive data with non-identical x.
std::pair<double, double> fit_power_law(
    std::span<const std::pair<double, double>> rows);

/// || sup_j |evolution of the focusing datum| ||_{L^2(B(0,1))} / ||f||_{H^s}
/// computed via the tensor split f = f1 x f2 (N = 2 only).
double focusing_sweep_ratio(const FocusingSpec& spec, double s, int nx1 = 300);

/// Rebuilds the focusing spec at each R (overrides rescaled by
/// (R/base.R)^{(r+1)beta/2}), measures focusing_sweep_ratio, fits log-log.
SweepResult run_R_sweep(const FocusingSpec& base, std::span<const double> R_list,
                        double s);

/// f = indicator of the annulus {lambda/2 <= |xi| <= lambda} in the plane;
/// returns ||sup_{t in (0,|I|]} |e^{itL} f| ||_{L^2(B(0,1))} / ||f||_2 for a
/// saddle symbol. interval_length must lie in [lambda^{-2}, lambda^{-1}].
double interval_sup_experiment(double lambda, double interval_length,
                               const SymbolKind& kind, int points_per_axis = 48);

/// Random annulus-supported fields at scale 2^k, sup over t in (0, 2^{-j}].
/// rows hold (trial, ball ratio); fitted_exponent reports the max ratio
/// normalized by 2^{(2k-j) N / (2(N+1))}.
SweepResult annulus_scaling_experiment(double k, double j, int trials,
                                 std::uint64_t seed = 0);

}  // namespace schrolab

#endif

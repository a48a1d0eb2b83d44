#ifndef SCHROLAB_COUNTEREXAMPLES_HPP
#define SCHROLAB_COUNTEREXAMPLES_HPP

#include <optional>
#include <vector>

#include "schrolab/sequences.hpp"
#include "schrolab/spectral.hpp"

namespace schrolab {

// --- focusing construction (elliptic) --------------------------------------

/// Parameters of the focusing initial datum. With no overrides the lattice
/// scale is S = R^{(r+1)beta/2} and the frequency cutoff rho = R^{1-eps};
/// overrides keep the resonant lattice structure (frequency lattice 2 pi S,
/// spatial probes 1/S, times 1/S^2) at desk scale.
struct FocusingSpec {
  int N = 2;
  double r = 0.5;
  double eps = 0.01;
  double R = 64.0;
  std::vector<double> theta;  // unit vector in R^{N-1}; empty = golden default
  std::optional<double> lattice_scale;  // S
  std::optional<double> freq_cutoff;    // rho

  double beta() const;
  double lattice_S() const;
  double cutoff_rho() const;
  std::vector<double> direction() const;  // theta with default filled in
  void validate() const;
};

struct FocusingDatum {
  SpectralField f1;     // 1-D factor, frequencies shifted by -pi R
  SpectralField f2;     // (N-1)-D factor, shifted by -pi R theta
  SpectralField g;      // unshifted Omega2 indicator
  SpectralField field;  // tensor product f1 x f2
  double omega1_measure = 0.0;
  double omega2_measure = 0.0;
  std::vector<std::vector<double>> omega2_centers;
  double support_radius = 0.0;  // actual max |xi| of the full field
};

/// Quadrature resolutions for the focusing build.
struct FocusingResolution {
  int omega1_points = 64;
  int ball_points = 12;  // per axis per Omega2 ball
};

FocusingDatum build_focusing(const FocusingSpec& spec,
                             const FocusingResolution& res = {});

/// Lattice times S^{-2} Z intersected with [S^{-2}, S^{-2/(r+1)}),
/// decreasing (equals R^{-beta(r+1)} Z cap [R^{-beta(r+1)}, R^{-beta})
/// without overrides). Throws when the intersection is empty.
TimeSequence focusing_time_sequence(const FocusingSpec& spec);

struct ResonanceReport {
  double min_ratio = 0.0;  // min over probes of |e^{i(t/2pi)Lap} g| / |Omega2|
  std::vector<double> worst_probe;
  bool pass = false;  // min_ratio >= 1/2
};

/// Checks |e^{i(t_j/2pi) Lap} g(x_m)| >= |Omega2|/2 on the probe lattice
/// x_m = m/S, |m| <= 2S. time_offset perturbs t_j (negative control).
ResonanceReport verify_resonance(const FocusingSpec& spec,
                                 const FocusingDatum& datum,
                                 std::size_t j_index,
                                 double time_offset = 0.0);

struct F1FocusReport {
  std::size_t t_index = 0;  // index into focusing_time_sequence
  double ratio = 0.0;       // |e^{i(t/2pi) Lap} f1(x1)| / |Omega1|
  bool pass = false;        // ratio >= 0.9
};

/// Selects the time with R t_j in (x1, x1 + R^{-beta/2}) and evaluates the
/// 1-D evolution. Throws if no admissible time exists.
F1FocusReport verify_f1_focusing(const FocusingSpec& spec,
                                 const FocusingDatum& datum, double x1);

// --- direction search -------------------------------------------------------

struct ThetaSearchParams {
  double lattice_spacing = 0.125;
  int translate_count = 32;
  double translate_step = 1.0;   // s_j = j * translate_step
  double probe_step = 1.0 / 512;
  double probe_radius = 0.5;
};

struct ThetaSearchResult {
  std::vector<double> theta;
  double covering_radius = 0.0;
  bool pass = false;
};

/// Largest distance from a probe point in B(0, probe_radius) in R^{N-1}
/// to the union over j of (lattice_spacing Z^{N-1} + s_j theta).
double covering_radius(int N, const ThetaSearchParams& params,
                       std::span<const double> theta);

/// Tries a deterministic candidate list (quadratic irrationals for N=2,
/// golden-angle directions for N>=3) and returns the best direction.
ThetaSearchResult theta_search(int N, const ThetaSearchParams& params,
                               double density_target, int candidates);

// --- predicted bounds -------------------------------------------------------

struct FocusingBounds {
  double lower = 0.0;  // R^{(1-beta)/2} R^{beta/2} R^{(N-1)(1-(r+1)beta/2)-eps}
  double upper = 0.0;  // R^s R^{beta/4} R^{(N-1)/2 (1-(r+1)beta/2)}
  double lower_exponent = 0.0;
  double upper_exponent = 0.0;
};

FocusingBounds predicted_focusing_bounds(const FocusingSpec& spec, double s);

// --- nonelliptic construction ----------------------------------------------

struct NonellipticSpec {
  double r = 0.5;
  double eps = 0.1;
  double b = 1.0 / 256;
  double M = 4.0;

  double lambda() const;  // M^{1/2} b^{-(r-eps+1)/2} / 1000
  void validate() const;  // requires M b^{1-r+eps} <= 1 etc.
};

struct NonellipticDatum {
  NonellipticSpec spec;
  int N = 2;
  SpectralField field;  // amp 1/lambda on [0,l]x[-l-1,-l] (x (0,1) when N=3)
  SymbolKind kind;      // hyperbolic2d or saddle3d
  std::vector<std::pair<double, double>> box_U;  // per-axis spatial box
  TimeSequence times;   // arithmetic, spacing 2 b^{r-eps+1} / M, max value b
  // tensor structure kept for fast evaluation
  std::vector<std::vector<double>> axis_nodes;
  std::vector<double> axis_weight;
};

NonellipticDatum build_nonelliptic(const NonellipticSpec& spec, int N,
                                   int points_per_axis = 48);

struct NonellipticReport {
  double fraction = 0.0;  // fraction of samples with sup > 1/2
  double min_sup = 0.0;
  std::vector<double> sups;  // per-sample sup over the time set
  bool pass = false;      // fraction == 1
};

/// Samples x uniformly in U and checks sup_n |e^{i t_n L} f(x)| > 1/2.
NonellipticReport verify_nonelliptic(const NonellipticDatum& datum,
                                     int sample_count, std::uint64_t seed);

/// || sup_n |e^{i t_n L} f| ||_{L^2(B(0,1))} / ||f||_{H^s}. Grid resolutions
/// are per axis over [-1,1].
double nonelliptic_ratio(const NonellipticDatum& datum, double s,
                         int nx1 = 400, int nx2 = 65, int nx3 = 25);

}  // namespace schrolab

#endif

#ifndef SCHROLAB_WAVEPACKETS_HPP
#define SCHROLAB_WAVEPACKETS_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "schrolab/spectral.hpp"

namespace schrolab {

/// Tiling of the annulus {2^{k-1} <= |xi| < 2^k} by frequency cubes of side
/// 2^{j-k} (theta) and the dual spatial lattice of spacing 2^{k-j} (nu).
/// The nu lattice is truncated to one period box: indices n in
/// [-period/2, period/2)^dim, centers c(nu) = 2^{k-j} n. When the field
/// atoms sit on the dual frequency grid of spacing 2 pi 2^{j-k} / period the
/// coefficient family is an exactly tight frame.
struct PacketLattice {
  int dim = 2;
  double k = 5.0;
  double j = 8.0;
  double delta = 1.25e-4;  // eps^3 with eps = 0.05
  int period = 64;
  std::vector<std::vector<double>> theta_centers;

  double side() const;          // 2^{j-k}
  double spacing() const;       // 2^{k-j}
  double grid_step() const;     // 2 pi side / period
  double tube_radius() const;   // 2^{(j-k)(-1+delta)}
  double far_threshold() const; // 2^{(j-k)(-1+10 delta)}
  std::vector<double> nu_center(std::span<const int> n) const;
};

/// Requires 0 < k < j < 2k and period a power of two.
PacketLattice make_packet_lattice(int dim, double k, double j, int period,
                                  double delta = 1.25e-4);

/// Per-axis frequency bump: sqrt of a smooth partition of unity over the
/// integer translates; supported in |u| < 2/3, equal to 1 for |u| <= 1/3.
double window_profile(double u);

/// phi_theta at xi: side^{-dim/2} prod_i window_profile((xi_i - c_i)/side).
double packet_window(const PacketLattice& lattice, std::size_t theta_index,
                     std::span<const double> xi);

struct PacketCoefficients {
  struct ThetaBlock {
    std::size_t theta_index = 0;
    std::vector<Complex> grid;  // period^dim entries, axis 0 slowest
  };

  PacketLattice lattice;
  std::vector<FrequencyAtom> source_atoms;
  double source_norm = 0.0;
  std::vector<ThetaBlock> blocks;  // only thetas meeting the field support

  double energy() const;  // sum |coef|^2
  Complex coefficient(std::size_t theta_index, std::span<const int> n) const;
  std::size_t flat_index(std::span<const int> n) const;
};

/// Coefficients <f, phi_{theta,nu}> over the truncated nu box, computed
/// frequency-side; entries below 1e-14 * ||f|| are zeroed. Throws when the
/// field support leaves the (slightly enlarged) annulus.
PacketCoefficients decompose(const SpectralField& field,
                             const PacketLattice& lattice);

/// Sum coef * phi_{theta,nu} evaluated back on the source atom set.
SpectralField reconstruct(const PacketCoefficients& coeffs);

/// Quadrature discretization of a single packet phi_{theta,nu}.
SpectralField packet_field(const PacketLattice& lattice,
                           std::size_t theta_index, std::span<const int> n,
                           int points_per_axis = 32);

struct TubeEnvelopeReport {
  double c2 = 0.0;  // fitted envelope constant for M = 2
  double c4 = 0.0;  // fitted envelope constant for M = 4
  bool pass = false;  // c4 <= 1e3
};

/// Fits the smallest C_M with |e^{it Lap} phi_{theta,nu}(x)| <=
/// C_M side^{dim/2} (1 + 2^{j-k} |x - c(nu) + 2 t c(theta)|)^{-M} over the
/// given (x, t) samples, t in (0, 2^{-j}).
TubeEnvelopeReport tube_envelope_check(
    const PacketLattice& lattice, std::size_t theta_index,
    std::span<const int> n,
    std::span<const std::pair<std::vector<double>, double>> samples,
    int points_per_axis = 32);

struct FarFieldReport {
  double ratio = 0.0;  // sup |evolution of far packets| / ||f||
  std::size_t far_count = 0;
  bool pass = false;  // ratio <= 1e-6
};

/// Far packets: |c(nu) - nu_prime| > multiplier * far_threshold(). Samples
/// the evolved far sum on B(nu_prime, 2^{k-j}) x (0, 2^{-j}).
FarFieldReport far_field_negligible(const PacketCoefficients& coeffs,
                                    std::span<const double> nu_prime,
                                    double multiplier);
FarFieldReport far_field_negligible(const SpectralField& field,
                                    const PacketLattice& lattice,
                                    std::span<const double> nu_prime,
                                    double multiplier);

}  // namespace schrolab

#endif

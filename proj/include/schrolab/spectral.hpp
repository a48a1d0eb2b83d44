#ifndef SCHROLAB_SPECTRAL_HPP
#define SCHROLAB_SPECTRAL_HPP

#include <complex>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace schrolab {

using Complex = std::complex<double>;

/// Dispersion relation sigma(xi) of the evolution e^{i t sigma(D)}.
struct SymbolKind {
  enum class Tag { Elliptic, Fractional, Nonelliptic, Hyperbolic2D, Saddle3D };

  Tag tag = Tag::Elliptic;
  double a = 2.0;               // Fractional order
  std::vector<int> signs;       // Nonelliptic sign pattern, signs[0] = +1, signs[1] = -1
  int saddle_sign = +1;         // Saddle3D: xi1*xi2 + saddle_sign * xi3^2

  static SymbolKind elliptic();
  static SymbolKind fractional(double a);
  static SymbolKind nonelliptic(std::vector<int> signs);
  static SymbolKind hyperbolic2d();
  static SymbolKind saddle3d(int sign = +1);

  std::string name() const;
};

/// sigma(xi) for the given symbol family. Throws on dimension mismatch.
double symbol_value(const SymbolKind& kind, std::span<const double> xi);

/// One frequency atom: a point mass amplitude * weight at xi, where weight
/// is the quadrature cell volume it represents.
struct FrequencyAtom {
  std::vector<double> xi;
  Complex amplitude;
  double weight = 1.0;
};

/// A band-limited function represented by its Fourier transform as a finite
/// weighted atom set, f(x) = sum_a amp_a e^{i x.xi_a} w_a. Immutable after
/// construction.
class SpectralField {
 public:
  SpectralField() = default;
  SpectralField(int dimension, std::vector<FrequencyAtom> atoms);

  int dimension() const { return dim_; }
  const std::vector<FrequencyAtom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  std::size_t size() const { return atoms_.size(); }

  /// max |xi| over atoms (0 for an empty field).
  double support_radius() const;

 private:
  int dim_ = 1;
  std::vector<FrequencyAtom> atoms_;
};

/// sum_a amp_a e^{i(x.xi_a + t sigma(xi_a))} w_a
Complex evaluate(const SpectralField& field, std::span<const double> x,
                 double t, const SymbolKind& kind);

/// Multiplies each amplitude by e^{i t sigma(xi)}.
SpectralField propagate(const SpectralField& field, double t,
                        const SymbolKind& kind);

/// (sum |amp|^2 w)^{1/2}, the frequency-side Plancherel proxy for ||f||_2.
double l2_norm(const SpectralField& field);

/// (sum (1+|xi|^2)^s |amp|^2 w)^{1/2}
double sobolev_norm(const SpectralField& field, double s);

/// Dyadic shells: piece 0 holds |xi| < 1, piece k >= 1 holds
/// 2^{k-1} <= |xi| < 2^k. Exact partition of the atom set.
std::map<int, SpectralField> littlewood_paley(const SpectralField& field);

/// Axis-aligned sampling grid, cell-centered. step may differ per axis.
struct SpatialGrid {
  std::vector<double> center;
  double half_width = 1.0;
  std::vector<double> step;

  SpatialGrid() = default;
  SpatialGrid(std::vector<double> c, double hw, std::vector<double> st);

  int dimension() const { return static_cast<int>(center.size()); }
  /// points along one axis: round(2*half_width/step), at least 1
  int axis_count(int axis) const;
  std::size_t total_count() const;
  double coordinate(int axis, int index) const;
  double cell_volume() const;
};

// --- indicator discretization -------------------------------------------

/// Midpoint discretization of chi_{[lo,hi)} in 1-D: `points` cells, weight
/// per atom = (hi-lo)/points so total weight equals |Omega| exactly.
SpectralField interval_indicator(double lo, double hi, int points,
                                 Complex amplitude = 1.0);

/// Ball indicator in dimension dim, points_per_axis midpoint cells across
/// the diameter; atoms outside the ball dropped and weights renormalized so
/// the total weight equals vol(B(center,radius)) exactly.
SpectralField ball_indicator(std::span<const double> center, double radius,
                             int dim, int points_per_axis,
                             Complex amplitude = 1.0);

/// Volume of the unit ball in dimension dim.
double unit_ball_volume(int dim);

/// Tensor product: dimensions add, amplitudes and weights multiply.
SpectralField tensor_product(const SpectralField& a, const SpectralField& b);

/// Union of atom sets (dimensions must agree).
SpectralField merge_fields(const SpectralField& a, const SpectralField& b);

/// Shift every atom frequency by `shift`.
SpectralField shift_frequency(const SpectralField& field,
                              std::span<const double> shift);

/// Scale every amplitude by c.
SpectralField scale_amplitude(const SpectralField& field, Complex c);

// --- serialization --------------------------------------------------------

/// JSON document {dimension, atoms:[{xi:[...], re, im, weight}]}. Round-trip
/// is bit-faithful for finite doubles.
std::string field_to_json(const SpectralField& field);
SpectralField field_from_json(const std::string& text);

}  // namespace schrolab

#endif

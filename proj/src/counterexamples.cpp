#include "schrolab/counterexamples.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace schrolab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGolden = 0.61803398874989484820;  // (sqrt5 - 1)/2

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

// --- focusing ---------------------------------------------------------------

double FocusingSpec::beta() const { return sequence_beta(r, N); }

double FocusingSpec::lattice_S() const {
  if (lattice_scale) return *lattice_scale;
  return std::pow(R, (r + 1.0) * beta() / 2.0);
}

double FocusingSpec::cutoff_rho() const {
  if (freq_cutoff) return *freq_cutoff;
  return std::pow(R, 1.0 - eps);
}

std::vector<double> FocusingSpec::direction() const {
  if (!theta.empty()) return theta;
  std::vector<double> d(N - 1, 0.0);
  if (N == 2) {
    d[0] = kGolden;
  } else {
    const double alpha = 2.0 * kPi * kGolden;
    d[0] = std::cos(alpha);
    d[1] = std::sin(alpha);
    // remaining coordinates stay 0 for N > 3
  }
  return d;
}

void FocusingSpec::validate() const {
  require(N >= 2, "focusing: N must be >= 2");
  require(r > 0.0, "focusing: r must be positive");
  require(eps >= 0.0, "focusing: eps must be nonnegative");
  require(R >= 2.0, "focusing: R must be >= 2");
  require(theta.empty() || theta.size() == static_cast<std::size_t>(N - 1),
          "focusing: theta must have N-1 coordinates");
  require(!lattice_scale || *lattice_scale > 1.0,
          "focusing: lattice scale must exceed 1");
  require(!freq_cutoff || *freq_cutoff > 0.0,
          "focusing: frequency cutoff must be positive");
}

FocusingDatum build_focusing(const FocusingSpec& spec,
                             const FocusingResolution& res) {
  spec.validate();
  require(res.omega1_points >= 1 && res.ball_points >= 1,
          "focusing: resolution must be positive");
  const double beta = spec.beta();
  const double S = spec.lattice_S();
  const double rho = spec.cutoff_rho();
  const int d2 = spec.N - 1;

  FocusingDatum out;

  // Omega1 = (-R^{beta/2}/100, R^{beta/2}/100), shifted by -pi R
  const double w = std::pow(spec.R, beta / 2.0) / 100.0;
  out.omega1_measure = 2.0 * w;
  out.f1 = interval_indicator(-w - kPi * spec.R, w - kPi * spec.R,
                              res.omega1_points);

  // Omega2 centers: 2 pi S Z^{N-1} inside B(0, rho)
  const double cell = 2.0 * kPi * S;
  const int reach = static_cast<int>(std::floor(rho / cell));
  std::vector<std::vector<int>> lattice;
  if (d2 == 1) {
    for (int m = -reach; m <= reach; ++m) lattice.push_back({m});
  } else {
    for (int m1 = -reach; m1 <= reach; ++m1)
      for (int m2 = -reach; m2 <= reach; ++m2) {
        std::vector<int> m{m1, m2};
        m.resize(d2, 0);
        lattice.push_back(std::move(m));
      }
  }
  SpectralField g;
  for (const auto& m : lattice) {
    std::vector<double> c(d2);
    double norm2 = 0.0;
    for (int i = 0; i < d2; ++i) {
      c[i] = cell * m[i];
      norm2 += c[i] * c[i];
    }
    if (std::sqrt(norm2) > rho) continue;
    SpectralField ball = ball_indicator(c, 1.0 / 1000, d2, res.ball_points);
    g = g.empty() ? ball : merge_fields(g, ball);
    out.omega2_centers.push_back(std::move(c));
  }
  require(!out.omega2_centers.empty(),
          "focusing: no lattice centers inside cutoff; raise rho or lower S");
  out.omega2_measure = static_cast<double>(out.omega2_centers.size()) *
                       unit_ball_volume(d2) * std::pow(1.0 / 1000, d2);
  out.g = g;

  std::vector<double> shift(d2);
  const auto theta = spec.direction();
  for (int i = 0; i < d2; ++i) shift[i] = -kPi * spec.R * theta[i];
  out.f2 = shift_frequency(g, shift);
  out.field = tensor_product(out.f1, out.f2);
  out.support_radius = out.field.support_radius();
  return out;
}

TimeSequence focusing_time_sequence(const FocusingSpec& spec) {
  spec.validate();
  const double S = spec.lattice_S();
  const double spacing = 1.0 / (S * S);
  const double upper = std::pow(S, -2.0 / (spec.r + 1.0));
  const int m_max = static_cast<int>(std::ceil(upper / spacing)) - 1;
  if (m_max < 1)
    throw std::invalid_argument(
        "focusing: time interval holds no lattice point");
  TimeSequence seq;
  seq.r = spec.r;
  seq.values.reserve(m_max);
  for (int m = m_max; m >= 1; --m) seq.values.push_back(m * spacing);
  seq.validate();
  return seq;
}

ResonanceReport verify_resonance(const FocusingSpec& spec,
                                 const FocusingDatum& datum,
                                 std::size_t j_index, double time_offset) {
  const auto times = focusing_time_sequence(spec);
  require(j_index < times.values.size(), "resonance: time index out of range");
  const double t = times.values[j_index] + time_offset;
  const double S = spec.lattice_S();
  const int d2 = spec.N - 1;
  const int reach = static_cast<int>(std::floor(2.0 * S));
  const auto kind = SymbolKind::elliptic();

  ResonanceReport rep;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  std::vector<int> m(d2, -reach);
  while (true) {
    double norm2 = 0.0;
    for (int v : m) norm2 += static_cast<double>(v) * v;
    if (std::sqrt(norm2) <= 2.0 * S) {
      std::vector<double> x(d2);
      for (int i = 0; i < d2; ++i) x[i] = m[i] / S;
      const double ratio =
          std::abs(evaluate(datum.g, x, t / (2.0 * kPi), kind)) /
          datum.omega2_measure;
      if (ratio < rep.min_ratio) {
        rep.min_ratio = ratio;
        rep.worst_probe = x;
      }
    }
    int axis = 0;
    while (axis < d2 && ++m[axis] > reach) m[axis++] = -reach;
    if (axis == d2) break;
  }
  rep.pass = rep.min_ratio >= 0.5;
  return rep;
}

F1FocusReport verify_f1_focusing(const FocusingSpec& spec,
                                 const FocusingDatum& datum, double x1) {
  const auto times = focusing_time_sequence(spec);
  const double width = std::pow(spec.R, -spec.beta() / 2.0);
  F1FocusReport rep;
  bool found = false;
  for (std::size_t j = 0; j < times.values.size(); ++j) {
    const double rt = spec.R * times.values[j];
    if (rt > x1 && rt < x1 + width) {
      rep.t_index = j;
      found = true;
      break;
    }
  }
  if (!found)
    throw std::invalid_argument(
        "f1 focusing: no time with R t in (x1, x1 + R^{-beta/2})");
  const double t = times.values[rep.t_index];
  const double x[1] = {x1};
  rep.ratio = std::abs(evaluate(datum.f1, x, t / (2.0 * kPi),
                                SymbolKind::elliptic())) /
              datum.omega1_measure;
  rep.pass = rep.ratio >= 0.9;
  return rep;
}

// --- direction search -------------------------------------------------------

double covering_radius(int N, const ThetaSearchParams& params,
                       std::span<const double> theta) {
  require(N >= 2, "covering_radius: N must be >= 2");
  const int d = N - 1;
  require(theta.size() == static_cast<std::size_t>(d),
          "covering_radius: theta must have N-1 coordinates");
  require(params.lattice_spacing > 0.0 && params.probe_step > 0.0 &&
              params.probe_radius > 0.0 && params.translate_count >= 1,
          "covering_radius: parameters must be positive");

  const int reach =
      static_cast<int>(std::floor(params.probe_radius / params.probe_step));
  double worst = 0.0;
  std::vector<int> idx(d, -reach);
  std::vector<double> p(d);
  while (true) {
    double pn2 = 0.0;
    for (int i = 0; i < d; ++i) {
      p[i] = idx[i] * params.probe_step;
      pn2 += p[i] * p[i];
    }
    if (std::sqrt(pn2) <= params.probe_radius) {
      double best = std::numeric_limits<double>::infinity();
      for (int j = 1; j <= params.translate_count; ++j) {
        const double s = j * params.translate_step;
        double d2 = 0.0;
        for (int i = 0; i < d; ++i) {
          const double q = p[i] - s * theta[i];
          const double off =
              q - params.lattice_spacing *
                      std::round(q / params.lattice_spacing);
          d2 += off * off;
        }
        best = std::min(best, std::sqrt(d2));
        if (best == 0.0) break;
      }
      worst = std::max(worst, best);
    }
    int axis = 0;
    while (axis < d && ++idx[axis] > reach) idx[axis++] = -reach;
    if (axis == d) break;
  }
  return worst;
}

ThetaSearchResult theta_search(int N, const ThetaSearchParams& params,
                               double density_target, int candidates) {
  require(candidates >= 1, "theta_search: need at least one candidate");
  ThetaSearchResult best;
  best.covering_radius = std::numeric_limits<double>::infinity();
  for (int c = 0; c < candidates; ++c) {
    std::vector<double> theta;
    if (N == 2) {
      static const double base[] = {kGolden,
                                    0.41421356237309515,    // sqrt2 - 1
                                    0.7320508075688772,     // sqrt3 - 1
                                    0.23606797749978969,    // sqrt5 - 2
                                    0.6457513110645906};    // sqrt7 - 2
      const int nb = static_cast<int>(std::size(base));
      double v = c < nb ? base[c]
                        : std::fmod((c - nb + 2) * kGolden, 1.0);
      theta = {v};
    } else {
      const double alpha = 2.0 * kPi * std::fmod((c + 1) * kGolden, 1.0);
      theta.assign(N - 1, 0.0);
      theta[0] = std::cos(alpha);
      theta[1] = std::sin(alpha);
    }
    const double radius = covering_radius(N, params, theta);
    if (radius < best.covering_radius) {
      best.covering_radius = radius;
      best.theta = std::move(theta);
    }
  }
  best.pass = best.covering_radius <= density_target;
  return best;
}

// --- predicted bounds -------------------------------------------------------

FocusingBounds predicted_focusing_bounds(const FocusingSpec& spec, double s) {
  spec.validate();
  const double beta = spec.beta();
  const double cap = 1.0 - (spec.r + 1.0) * beta / 2.0;
  FocusingBounds out;
  out.lower_exponent =
      (1.0 - beta) / 2.0 + beta / 2.0 + (spec.N - 1) * cap - spec.eps;
  out.upper_exponent = s + beta / 4.0 + (spec.N - 1) / 2.0 * cap;
  out.lower = std::pow(spec.R, out.lower_exponent);
  out.upper = std::pow(spec.R, out.upper_exponent);
  return out;
}

// --- nonelliptic ------------------------------------------------------------

double NonellipticSpec::lambda() const {
  return std::sqrt(M) * std::pow(b, -(r - eps + 1.0) / 2.0) / 1000.0;
}

void NonellipticSpec::validate() const {
  require(r > 0.0 && r <= 1.0, "nonelliptic: r must lie in (0,1]");
  require(eps > 0.0 && eps < r, "nonelliptic: eps must lie in (0,r)");
  require(b > 0.0 && b < 1.0, "nonelliptic: b must lie in (0,1)");
  require(M >= 1.0, "nonelliptic: M must be >= 1");
  require(M * std::pow(b, 1.0 - r + eps) <= 1.0 + 1e-12,
          "nonelliptic: need M b^{1-r+eps} <= 1");
}

NonellipticDatum build_nonelliptic(const NonellipticSpec& spec, int N,
                                   int points_per_axis) {
  spec.validate();
  require(N == 2 || N == 3, "nonelliptic: N must be 2 or 3");
  require(points_per_axis >= 2, "nonelliptic: need >= 2 points per axis");
  const double l = spec.lambda();

  NonellipticDatum out;
  out.spec = spec;
  out.N = N;
  out.kind = N == 2 ? SymbolKind::hyperbolic2d() : SymbolKind::saddle3d();

  const Complex amp = 1.0 / l;
  SpectralField a1 = interval_indicator(0.0, l, points_per_axis, amp);
  SpectralField a2 = interval_indicator(-l - 1.0, -l, points_per_axis);
  out.field = tensor_product(a1, a2);
  out.axis_weight = {l / points_per_axis, 1.0 / points_per_axis};
  if (N == 3) {
    SpectralField a3 = interval_indicator(0.0, 1.0, points_per_axis);
    out.field = tensor_product(out.field, a3);
    out.axis_weight.push_back(1.0 / points_per_axis);
  }
  out.axis_nodes.resize(N);
  for (int ax = 0; ax < N; ++ax) {
    double lo = ax == 0 ? 0.0 : (ax == 1 ? -l - 1.0 : 0.0);
    double span = ax == 0 ? l : 1.0;
    for (int i = 0; i < points_per_axis; ++i)
      out.axis_nodes[ax].push_back(lo + (i + 0.5) * span / points_per_axis);
  }

  out.box_U.emplace_back(0.0, l * spec.b / 2.0);
  for (int ax = 1; ax < N; ++ax)
    out.box_U.emplace_back(-1.0 / 1000, 1.0 / 1000);

  const double gap = 2.0 * std::pow(spec.b, spec.r - spec.eps + 1.0) / spec.M;
  const int count = static_cast<int>(std::floor(spec.b / gap));
  require(count >= 1, "nonelliptic: time gap exceeds b");
  out.times.r = spec.r;
  for (int n = 0; n < count; ++n)
    out.times.values.push_back(spec.b - n * gap);
  out.times.validate();
  return out;
}

NonellipticReport verify_nonelliptic(const NonellipticDatum& datum,
                                     int sample_count, std::uint64_t seed) {
  require(sample_count >= 1, "verify_nonelliptic: need samples");
  std::mt19937_64 rng(seed);
  std::vector<std::uniform_real_distribution<double>> dist;
  for (const auto& [lo, hi] : datum.box_U) dist.emplace_back(lo, hi);

  // phase factor per (time, atom) reused across samples
  const auto& atoms = datum.field.atoms();
  std::vector<std::vector<Complex>> phase(datum.times.values.size());
  for (std::size_t n = 0; n < phase.size(); ++n) {
    const double t = datum.times.values[n];
    phase[n].reserve(atoms.size());
    for (const auto& a : atoms)
      phase[n].push_back(a.amplitude * a.weight *
                         std::polar(1.0, t * symbol_value(datum.kind, a.xi)));
  }

  NonellipticReport rep;
  rep.min_sup = std::numeric_limits<double>::infinity();
  int hits = 0;
  std::vector<double> x(datum.N);
  std::vector<Complex> spatial(atoms.size());
  for (int s = 0; s < sample_count; ++s) {
    for (int i = 0; i < datum.N; ++i) x[i] = dist[i](rng);
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      double dot = 0.0;
      for (int i = 0; i < datum.N; ++i) dot += x[i] * atoms[a].xi[i];
      spatial[a] = std::polar(1.0, dot);
    }
    double sup = 0.0;
    for (const auto& row : phase) {
      Complex acc = 0.0;
      for (std::size_t a = 0; a < atoms.size(); ++a) acc += row[a] * spatial[a];
      sup = std::max(sup, std::abs(acc));
    }
    if (sup > 0.5) ++hits;
    rep.min_sup = std::min(rep.min_sup, sup);
    rep.sups.push_back(sup);
  }
  rep.fraction = static_cast<double>(hits) / sample_count;
  rep.pass = hits == sample_count;
  return rep;
}

double nonelliptic_ratio(const NonellipticDatum& datum, double s, int nx1,
                         int nx2, int nx3) {
  require(nx1 >= 2 && nx2 >= 2 && nx3 >= 2,
          "nonelliptic_ratio: grid too coarse");
  const auto& xi1 = datum.axis_nodes[0];
  const auto& xi2 = datum.axis_nodes[1];
  const std::size_t na = xi1.size(), nb = xi2.size();
  const Complex amp = 1.0 / datum.spec.lambda();
  const double w12 = datum.axis_weight[0] * datum.axis_weight[1];

  auto grid_coord = [](int n, int i) { return -1.0 + (i + 0.5) * 2.0 / n; };

  // spatial phase tables over [-1,1] per axis
  std::vector<Complex> P1(static_cast<std::size_t>(nx1) * na);
  for (int x = 0; x < nx1; ++x)
    for (std::size_t a = 0; a < na; ++a)
      P1[x * na + a] = std::polar(1.0, grid_coord(nx1, x) * xi1[a]);
  std::vector<Complex> P2(static_cast<std::size_t>(nx2) * nb);
  for (int y = 0; y < nx2; ++y)
    for (std::size_t b = 0; b < nb; ++b)
      P2[y * nb + b] = std::polar(1.0, grid_coord(nx2, y) * xi2[b]);

  const bool three_d = datum.N == 3;
  const std::size_t nz = three_d ? static_cast<std::size_t>(nx3) : 1;
  std::vector<double> sup(static_cast<std::size_t>(nx1) * nx2 * nz, 0.0);

  std::vector<Complex> M(na * nb), T(static_cast<std::size_t>(nx1) * nb);
  std::vector<double> f3(nz, 1.0);
  for (double t : datum.times.values) {
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t b = 0; b < nb; ++b)
        M[a * nb + b] = amp * w12 * std::polar(1.0, t * xi1[a] * xi2[b]);
    for (int x = 0; x < nx1; ++x)
      for (std::size_t b = 0; b < nb; ++b) {
        Complex acc = 0.0;
        for (std::size_t a = 0; a < na; ++a)
          acc += P1[x * na + a] * M[a * nb + b];
        T[x * nb + b] = acc;
      }
    if (three_d) {
      const auto& xi3 = datum.axis_nodes[2];
      const int sgn = datum.kind.saddle_sign;
      for (std::size_t z = 0; z < nz; ++z) {
        Complex acc = 0.0;
        for (double q : xi3)
          acc += std::polar(1.0, grid_coord(nx3, static_cast<int>(z)) * q +
                                     t * sgn * q * q) *
                 datum.axis_weight[2];
        f3[z] = std::abs(acc);
      }
    }
    for (int x = 0; x < nx1; ++x)
      for (int y = 0; y < nx2; ++y) {
        Complex acc = 0.0;
        for (std::size_t b = 0; b < nb; ++b)
          acc += T[x * nb + b] * P2[y * nb + b];
        const double mag = std::abs(acc);
        for (std::size_t z = 0; z < nz; ++z) {
          double& cell = sup[(static_cast<std::size_t>(x) * nx2 + y) * nz + z];
          cell = std::max(cell, mag * f3[z]);
        }
      }
  }

  double vol = (2.0 / nx1) * (2.0 / nx2);
  if (three_d) vol *= 2.0 / nx3;
  double num2 = 0.0;
  for (int x = 0; x < nx1; ++x)
    for (int y = 0; y < nx2; ++y) {
      const double cx = grid_coord(nx1, x), cy = grid_coord(nx2, y);
      for (std::size_t z = 0; z < nz; ++z) {
        double r2 = cx * cx + cy * cy;
        if (three_d) {
          const double cz = grid_coord(nx3, static_cast<int>(z));
          r2 += cz * cz;
        }
        if (r2 > 1.0) continue;
        const double v = sup[(static_cast<std::size_t>(x) * nx2 + y) * nz + z];
        num2 += v * v * vol;
      }
    }
  return std::sqrt(num2) / sobolev_norm(datum.field, s);
}

}  // namespace schrolab

#include "schrolab/wavepackets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace schrolab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTruncation = 1e-14;

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

double bump(double u) {
  const double v = 1.5 * u;
  if (std::abs(v) >= 1.0) return 0.0;
  return std::exp(-2.0 / (1.0 - v * v));
}

bool is_pow2(int p) { return p >= 2 && (p & (p - 1)) == 0; }

// in-place power-of-two FFT, exponent sign +1 or -1, no normalization
void fft(std::vector<Complex>& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, rev = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; rev & bit; bit >>= 1) rev ^= bit;
    rev ^= bit;
    if (i < rev) std::swap(a[i], a[rev]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * kPi / static_cast<double>(len);
    const Complex wl = std::polar(1.0, ang);
    for (std::size_t i = 0; i < n; i += len) {
      Complex w = 1.0;
      for (std::size_t h = 0; h < len / 2; ++h) {
        const Complex u = a[i + h], v = a[i + h + len / 2] * w;
        a[i + h] = u + v;
        a[i + h + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

// FFT along every axis of a period^dim array (axis 0 slowest)
void fft_nd(std::vector<Complex>& grid, int dim, int period, int sign) {
  std::vector<Complex> line(period);
  std::size_t stride = 1;
  for (int axis = dim - 1; axis >= 0; --axis) {
    const std::size_t block = stride * period;
    for (std::size_t base = 0; base < grid.size(); base += block)
      for (std::size_t off = 0; off < stride; ++off) {
        for (int i = 0; i < period; ++i)
          line[i] = grid[base + off + i * stride];
        fft(line, sign);
        for (int i = 0; i < period; ++i)
          grid[base + off + i * stride] = line[i];
      }
    stride = block;
  }
}

struct GridAlignment {
  bool aligned = false;
  std::vector<double> offset;       // per axis, in [0, h)
  std::vector<std::vector<int>> m;  // per atom, grid index per axis
};

GridAlignment detect_alignment(const std::vector<FrequencyAtom>& atoms,
                               int dim, double h) {
  GridAlignment al;
  if (atoms.empty()) return al;
  al.offset.resize(dim);
  for (int i = 0; i < dim; ++i) {
    double o = std::fmod(atoms.front().xi[i], h);
    if (o < 0) o += h;
    al.offset[i] = o;
  }
  al.m.reserve(atoms.size());
  for (const auto& a : atoms) {
    std::vector<int> idx(dim);
    for (int i = 0; i < dim; ++i) {
      const double q = (a.xi[i] - al.offset[i]) / h;
      const double qr = std::round(q);
      if (std::abs(q - qr) > 1e-9 * std::max(1.0, std::abs(a.xi[i]) / h))
        return al;
      idx[i] = static_cast<int>(qr);
    }
    al.m.push_back(std::move(idx));
  }
  al.aligned = true;
  return al;
}

std::vector<int> signed_index(std::size_t flat, int dim, int period) {
  std::vector<int> n(dim);
  for (int i = dim - 1; i >= 0; --i) {
    int idx = static_cast<int>(flat % period);
    flat /= period;
    n[i] = idx >= period / 2 ? idx - period : idx;
  }
  return n;
}

}  // namespace

double PacketLattice::side() const { return std::exp2(j - k); }
double PacketLattice::spacing() const { return std::exp2(k - j); }
double PacketLattice::grid_step() const { return 2.0 * kPi * side() / period; }
double PacketLattice::tube_radius() const {
  return std::exp2((j - k) * (-1.0 + delta));
}
double PacketLattice::far_threshold() const {
  return std::exp2((j - k) * (-1.0 + 10.0 * delta));
}

std::vector<double> PacketLattice::nu_center(std::span<const int> n) const {
  require(n.size() == static_cast<std::size_t>(dim),
          "nu_center: index dimension mismatch");
  std::vector<double> c(dim);
  for (int i = 0; i < dim; ++i) c[i] = spacing() * n[i];
  return c;
}

PacketLattice make_packet_lattice(int dim, double k, double j, int period,
                                  double delta) {
  require(dim >= 1, "packet lattice: dim must be >= 1");
  require(k > 0.0 && k < j && j < 2.0 * k,
          "packet lattice: need 0 < k < j < 2k");
  require(is_pow2(period), "packet lattice: period must be a power of two");
  require(delta > 0.0, "packet lattice: delta must be positive");

  PacketLattice lat;
  lat.dim = dim;
  lat.k = k;
  lat.j = j;
  lat.delta = delta;
  lat.period = period;

  // every cube whose window support can meet the (enlarged) annulus where
  // atoms are admitted
  const double L = lat.side();
  const double inner = std::exp2(k - 1.0) - 1.5 * L;
  const double outer = std::exp2(k) + 1.5 * L;
  const int qmax = static_cast<int>(std::ceil(outer / L)) + 1;
  std::vector<int> q(dim, -qmax);
  while (true) {
    double minr2 = 0.0, maxr2 = 0.0;
    for (int i = 0; i < dim; ++i) {
      const double lo = (q[i] + 0.5) * L - 2.0 * L / 3.0;
      const double hi = (q[i] + 0.5) * L + 2.0 * L / 3.0;
      const double lo2 = lo * lo, hi2 = hi * hi;
      if (!(lo <= 0.0 && 0.0 <= hi)) minr2 += std::min(lo2, hi2);
      maxr2 += std::max(lo2, hi2);
    }
    if (std::sqrt(maxr2) >= std::max(inner, 0.0) &&
        std::sqrt(minr2) <= outer) {
      std::vector<double> c(dim);
      for (int i = 0; i < dim; ++i) c[i] = (q[i] + 0.5) * L;
      lat.theta_centers.push_back(std::move(c));
    }
    int axis = 0;
    while (axis < dim && ++q[axis] > qmax) q[axis++] = -qmax;
    if (axis == dim) break;
  }
  return lat;
}

double window_profile(double u) {
  const double num = bump(u);
  if (num == 0.0) return 0.0;
  double den = 0.0;
  for (int m = -2; m <= 2; ++m) den += bump(u - m);
  return std::sqrt(num / den);
}

double packet_window(const PacketLattice& lattice, std::size_t theta_index,
                     std::span<const double> xi) {
  require(theta_index < lattice.theta_centers.size(),
          "packet_window: theta index out of range");
  require(xi.size() == static_cast<std::size_t>(lattice.dim),
          "packet_window: dimension mismatch");
  const auto& c = lattice.theta_centers[theta_index];
  const double L = lattice.side();
  double prod = std::pow(L, -lattice.dim / 2.0);
  for (int i = 0; i < lattice.dim; ++i) {
    prod *= window_profile((xi[i] - c[i]) / L);
    if (prod == 0.0) return 0.0;
  }
  return prod;
}

double PacketCoefficients::energy() const {
  double total = 0.0;
  for (const auto& b : blocks)
    for (const auto& v : b.grid) total += std::norm(v);
  return total;
}

std::size_t PacketCoefficients::flat_index(std::span<const int> n) const {
  require(n.size() == static_cast<std::size_t>(lattice.dim),
          "flat_index: dimension mismatch");
  const int P = lattice.period;
  std::size_t flat = 0;
  for (int i = 0; i < lattice.dim; ++i) {
    const int idx = ((n[i] % P) + P) % P;
    flat = flat * P + idx;
  }
  return flat;
}

Complex PacketCoefficients::coefficient(std::size_t theta_index,
                                        std::span<const int> n) const {
  for (const auto& b : blocks)
    if (b.theta_index == theta_index) return b.grid[flat_index(n)];
  return 0.0;
}

PacketCoefficients decompose(const SpectralField& field,
                             const PacketLattice& lattice) {
  require(field.dimension() == lattice.dim,
          "decompose: field dimension mismatch");
  const double L = lattice.side();
  const double inner = std::exp2(lattice.k - 1.0) - 1.5 * L;
  const double outer = std::exp2(lattice.k) + 1.5 * L;
  for (const auto& a : field.atoms()) {
    double r2 = 0.0;
    for (double v : a.xi) r2 += v * v;
    const double r = std::sqrt(r2);
    require(r >= inner && r <= outer, "decompose: field support outside annulus");
  }

  PacketCoefficients out;
  out.lattice = lattice;
  out.source_atoms = field.atoms();
  out.source_norm = l2_norm(field);

  const int dim = lattice.dim;
  const int P = lattice.period;
  const double h = lattice.grid_step();
  const double dx = lattice.spacing();
  std::size_t total = 1;
  for (int i = 0; i < dim; ++i) total *= P;

  const auto al = detect_alignment(out.source_atoms, dim, h);

  for (std::size_t ti = 0; ti < lattice.theta_centers.size(); ++ti) {
    // atoms meeting this window
    std::vector<std::size_t> live;
    std::vector<double> win;
    for (std::size_t a = 0; a < out.source_atoms.size(); ++a) {
      const double w = packet_window(lattice, ti, out.source_atoms[a].xi);
      if (w != 0.0) {
        live.push_back(a);
        win.push_back(w);
      }
    }
    if (live.empty()) continue;

    PacketCoefficients::ThetaBlock block;
    block.theta_index = ti;
    block.grid.assign(total, 0.0);
    const double scale = std::pow(2.0 * kPi, -dim / 2.0);

    if (al.aligned) {
      for (std::size_t s = 0; s < live.size(); ++s) {
        const auto& atom = out.source_atoms[live[s]];
        std::size_t flat = 0;
        for (int i = 0; i < dim; ++i)
          flat = flat * P + ((al.m[live[s]][i] % P) + P) % P;
        block.grid[flat] += atom.amplitude * atom.weight * win[s];
      }
      fft_nd(block.grid, dim, P, +1);
      // restore the grid-offset phase so entries are true coefficients
      for (std::size_t flat = 0; flat < total; ++flat) {
        const auto n = signed_index(flat, dim, P);
        double dot = 0.0;
        for (int i = 0; i < dim; ++i) dot += n[i] * al.offset[i];
        block.grid[flat] *= scale * std::polar(1.0, dx * dot);
      }
    } else {
      for (std::size_t flat = 0; flat < total; ++flat) {
        const auto n = signed_index(flat, dim, P);
        Complex acc = 0.0;
        for (std::size_t s = 0; s < live.size(); ++s) {
          const auto& atom = out.source_atoms[live[s]];
          double dot = 0.0;
          for (int i = 0; i < dim; ++i) dot += n[i] * atom.xi[i];
          acc += atom.amplitude * atom.weight * win[s] *
                 std::polar(1.0, dx * dot);
        }
        block.grid[flat] = scale * acc;
      }
    }
    out.blocks.push_back(std::move(block));
  }

  const double floor_ = kTruncation * out.source_norm;
  for (auto& b : out.blocks)
    for (auto& v : b.grid)
      if (std::abs(v) < floor_) v = 0.0;
  return out;
}

SpectralField reconstruct(const PacketCoefficients& coeffs) {
  const auto& lat = coeffs.lattice;
  const int dim = lat.dim;
  const int P = lat.period;
  const double dx = lat.spacing();
  const double scale = std::pow(2.0 * kPi, -dim / 2.0);
  std::vector<FrequencyAtom> atoms = coeffs.source_atoms;
  for (auto& a : atoms) a.amplitude = 0.0;
  if (atoms.empty()) return {};

  const auto al = detect_alignment(coeffs.source_atoms, dim, lat.grid_step());

  for (const auto& b : coeffs.blocks) {
    if (al.aligned) {
      std::vector<Complex> tmp(b.grid.size());
      for (std::size_t flat = 0; flat < b.grid.size(); ++flat) {
        const auto n = signed_index(flat, dim, P);
        double dot = 0.0;
        for (int i = 0; i < dim; ++i) dot += n[i] * al.offset[i];
        tmp[flat] = b.grid[flat] * std::polar(1.0, -dx * dot);
      }
      fft_nd(tmp, dim, P, -1);
      for (std::size_t a = 0; a < atoms.size(); ++a) {
        const double w = packet_window(lat, b.theta_index,
                                       coeffs.source_atoms[a].xi);
        if (w == 0.0) continue;
        std::size_t flat = 0;
        for (int i = 0; i < dim; ++i)
          flat = flat * P + ((al.m[a][i] % P) + P) % P;
        atoms[a].amplitude += scale * w * tmp[flat];
      }
    } else {
      for (std::size_t a = 0; a < atoms.size(); ++a) {
        const double w = packet_window(lat, b.theta_index,
                                       coeffs.source_atoms[a].xi);
        if (w == 0.0) continue;
        Complex acc = 0.0;
        for (std::size_t flat = 0; flat < b.grid.size(); ++flat) {
          if (b.grid[flat] == 0.0) continue;
          const auto n = signed_index(flat, dim, P);
          double dot = 0.0;
          for (int i = 0; i < dim; ++i) dot += n[i] * coeffs.source_atoms[a].xi[i];
          acc += b.grid[flat] * std::polar(1.0, -dx * dot);
        }
        atoms[a].amplitude += scale * w * acc;
      }
    }
  }
  return SpectralField(dim, std::move(atoms));
}

SpectralField packet_field(const PacketLattice& lattice,
                           std::size_t theta_index, std::span<const int> n,
                           int points_per_axis) {
  require(theta_index < lattice.theta_centers.size(),
          "packet_field: theta index out of range");
  require(points_per_axis >= 2, "packet_field: need >= 2 points per axis");
  const int dim = lattice.dim;
  const double L = lattice.side();
  const auto& c = lattice.theta_centers[theta_index];
  const auto cnu = lattice.nu_center(n);
  const double span_ = 4.0 * L / 3.0;
  const double step = span_ / points_per_axis;
  const double cell = std::pow(step, dim);

  std::vector<FrequencyAtom> atoms;
  std::vector<int> idx(dim, 0);
  while (true) {
    std::vector<double> xi(dim);
    for (int i = 0; i < dim; ++i)
      xi[i] = c[i] - span_ / 2.0 + (idx[i] + 0.5) * step;
    const double w = packet_window(lattice, theta_index, xi);
    if (w != 0.0) {
      double dot = 0.0;
      for (int i = 0; i < dim; ++i) dot += cnu[i] * xi[i];
      atoms.push_back({xi, w * std::polar(1.0, -dot), cell});
    }
    int axis = 0;
    while (axis < dim && ++idx[axis] >= points_per_axis) idx[axis++] = 0;
    if (axis == dim) break;
  }
  return SpectralField(dim, std::move(atoms));
}

TubeEnvelopeReport tube_envelope_check(
    const PacketLattice& lattice, std::size_t theta_index,
    std::span<const int> n,
    std::span<const std::pair<std::vector<double>, double>> samples,
    int points_per_axis) {
  require(!samples.empty(), "tube_envelope_check: no samples");
  const auto packet = packet_field(lattice, theta_index, n, points_per_axis);
  const auto& cth = lattice.theta_centers[theta_index];
  const auto cnu = lattice.nu_center(n);
  const double L = lattice.side();
  const double amp_scale = std::pow(L, lattice.dim / 2.0);
  const auto kind = SymbolKind::elliptic();

  TubeEnvelopeReport rep;
  for (const auto& [x, t] : samples) {
    require(x.size() == static_cast<std::size_t>(lattice.dim),
            "tube_envelope_check: sample dimension mismatch");
    require(t > 0.0 && t < std::exp2(-lattice.j) * (1.0 + 1e-12),
            "tube_envelope_check: t outside (0, 2^{-j})");
    const double val = std::abs(evaluate(packet, x, t, kind));
    double d2 = 0.0;
    for (int i = 0; i < lattice.dim; ++i) {
      const double v = x[i] - cnu[i] + 2.0 * t * cth[i];
      d2 += v * v;
    }
    const double u = 1.0 + L * std::sqrt(d2);
    rep.c2 = std::max(rep.c2, val * u * u / amp_scale);
    rep.c4 = std::max(rep.c4, val * u * u * u * u / amp_scale);
  }
  rep.pass = rep.c4 <= 1e3;
  return rep;
}

FarFieldReport far_field_negligible(const PacketCoefficients& coeffs,
                                    std::span<const double> nu_prime,
                                    double multiplier) {
  const auto& lat = coeffs.lattice;
  require(nu_prime.size() == static_cast<std::size_t>(lat.dim),
          "far_field: center dimension mismatch");
  require(multiplier > 0.0, "far_field: multiplier must be positive");
  const double thresh = multiplier * lat.far_threshold();
  const int dim = lat.dim;
  const int P = lat.period;

  PacketCoefficients far = coeffs;
  FarFieldReport rep;
  for (auto& b : far.blocks)
    for (std::size_t flat = 0; flat < b.grid.size(); ++flat) {
      const auto n = signed_index(flat, dim, P);
      double d2 = 0.0;
      for (int i = 0; i < dim; ++i) {
        const double v = lat.spacing() * n[i] - nu_prime[i];
        d2 += v * v;
      }
      if (std::sqrt(d2) <= thresh)
        b.grid[flat] = 0.0;
      else if (b.grid[flat] != 0.0)
        ++rep.far_count;
    }

  const auto g = reconstruct(far);
  const double radius = lat.spacing();
  const double tmax = std::exp2(-lat.j);
  const auto kind = SymbolKind::elliptic();

  double sup = 0.0;
  std::vector<int> idx(dim, 0);
  const int nx = 7, nt = 7;
  while (true) {
    std::vector<double> x(dim);
    double d2 = 0.0;
    for (int i = 0; i < dim; ++i) {
      const double off = -radius + (2.0 * radius) * idx[i] / (nx - 1);
      x[i] = nu_prime[i] + off;
      d2 += off * off;
    }
    if (d2 <= radius * radius * (1.0 + 1e-12)) {
      for (int it = 1; it <= nt; ++it) {
        const double t = tmax * it / nt;
        sup = std::max(sup, std::abs(evaluate(g, x, t, kind)));
      }
    }
    int axis = 0;
    while (axis < dim && ++idx[axis] >= nx) idx[axis++] = 0;
    if (axis == dim) break;
  }
  rep.ratio = coeffs.source_norm > 0.0 ? sup / coeffs.source_norm : 0.0;
  rep.pass = rep.ratio <= 1e-6;
  return rep;
}

FarFieldReport far_field_negligible(const SpectralField& field,
                                    const PacketLattice& lattice,
                                    std::span<const double> nu_prime,
                                    double multiplier) {
  return far_field_negligible(decompose(field, lattice), nu_prime, multiplier);
}

}  // namespace schrolab

#include "schrolab/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace schrolab {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// sigma(xi) = s1(xi1) + s2(xi2) + cross * xi1 * xi2 when separable in 2-D
struct SeparableSymbol {
  bool ok = false;
  double c1 = 0.0, c2 = 0.0;  // s_i(u) = c_i u^2
  double cross = 0.0;
};

SeparableSymbol split_symbol(const SymbolKind& kind, int dim) {
  SeparableSymbol s;
  if (dim != 2) return s;
  switch (kind.tag) {
    case SymbolKind::Tag::Elliptic:
      s = {true, 1.0, 1.0, 0.0};
      break;
    case SymbolKind::Tag::Fractional:
      if (kind.a == 2.0) s = {true, 1.0, 1.0, 0.0};
      break;
    case SymbolKind::Tag::Nonelliptic:
      if (kind.signs.size() == 2)
        s = {true, static_cast<double>(kind.signs[0]),
             static_cast<double>(kind.signs[1]), 0.0};
      break;
    case SymbolKind::Tag::Hyperbolic2D:
      s = {true, 0.0, 0.0, 1.0};
      break;
    default:
      break;
  }
  return s;
}

void update_sup(MaximalProfile& prof, std::size_t cell, double value,
                int time_index) {
  if (value > prof.sup_values[cell]) {
    prof.sup_values[cell] = value;
    prof.argmax_time_index[cell] = time_index;
  }
}

}  // namespace

MaximalProfile maximal_profile(const SpectralField& field,
                               std::span<const double> times,
                               const SymbolKind& kind,
                               const SpatialGrid& grid) {
  require(!times.empty(), "maximal_profile: empty time set");
  require(grid.dimension() == field.dimension(),
          "maximal_profile: grid dimension mismatch");
  const int dim = field.dimension();

  MaximalProfile prof;
  prof.grid = grid;
  prof.times.assign(times.begin(), times.end());
  prof.sup_values.assign(grid.total_count(), 0.0);
  prof.argmax_time_index.assign(grid.total_count(), -1);

  const auto sep = split_symbol(kind, dim);
  const auto& atoms = field.atoms();

  if (sep.ok && !atoms.empty()) {
    // group atoms into xi1 columns; evaluation is two matrix products
    std::vector<double> col_xi1;
    std::vector<std::vector<std::size_t>> col_members;
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      const double v = atoms[a].xi[0];
      auto it = std::find(col_xi1.begin(), col_xi1.end(), v);
      if (it == col_xi1.end()) {
        col_xi1.push_back(v);
        col_members.push_back({a});
      } else {
        col_members[it - col_xi1.begin()].push_back(a);
      }
    }
    const std::size_t nc = col_xi1.size();
    const int n1 = grid.axis_count(0), n2 = grid.axis_count(1);
    std::vector<double> x1(n1), x2(n2);
    for (int i = 0; i < n1; ++i) x1[i] = grid.coordinate(0, i);
    for (int i = 0; i < n2; ++i) x2[i] = grid.coordinate(1, i);

    std::vector<Complex> colsum(nc * n2), row(nc);
    for (std::size_t it = 0; it < prof.times.size(); ++it) {
      const double t = prof.times[it];
      for (std::size_t c = 0; c < nc; ++c) {
        const double shift = sep.cross * t * col_xi1[c];
        for (int i = 0; i < n2; ++i) {
          Complex acc = 0.0;
          for (std::size_t a : col_members[c]) {
            const double xi2 = atoms[a].xi[1];
            acc += atoms[a].amplitude * atoms[a].weight *
                   std::polar(1.0, (x2[i] + shift) * xi2 +
                                       t * sep.c2 * xi2 * xi2);
          }
          colsum[c * n2 + i] = acc;
        }
      }
      for (int i1 = 0; i1 < n1; ++i1) {
        for (std::size_t c = 0; c < nc; ++c)
          row[c] = std::polar(1.0, x1[i1] * col_xi1[c] +
                                       t * sep.c1 * col_xi1[c] * col_xi1[c]);
        for (int i2 = 0; i2 < n2; ++i2) {
          Complex acc = 0.0;
          for (std::size_t c = 0; c < nc; ++c) acc += row[c] * colsum[c * n2 + i2];
          update_sup(prof, static_cast<std::size_t>(i1) * n2 + i2,
                     std::abs(acc), static_cast<int>(it));
        }
      }
    }
    return prof;
  }

  // generic path
  std::vector<int> idx(dim, 0);
  std::vector<double> x(dim);
  std::size_t cell = 0;
  while (true) {
    for (int i = 0; i < dim; ++i) x[i] = grid.coordinate(i, idx[i]);
    for (std::size_t it = 0; it < prof.times.size(); ++it)
      update_sup(prof, cell, std::abs(evaluate(field, x, prof.times[it], kind)),
                 static_cast<int>(it));
    ++cell;
    int axis = dim - 1;
    while (axis >= 0 && ++idx[axis] >= grid.axis_count(axis)) idx[axis--] = 0;
    if (axis < 0) break;
  }
  return prof;
}

MaximalProfile maximal_profile(const SpectralField& field,
                               const TimeSequence& times,
                               const SymbolKind& kind,
                               const SpatialGrid& grid) {
  times.validate();
  return maximal_profile(field, std::span<const double>(times.values), kind,
                         grid);
}

double max_interval_step(const SpectralField& field, const SymbolKind& kind) {
  double mx = 0.0;
  for (const auto& a : field.atoms())
    mx = std::max(mx, std::abs(symbol_value(kind, a.xi)));
  if (mx == 0.0) return std::numeric_limits<double>::infinity();
  return std::numbers::pi / (4.0 * mx);
}

MaximalProfile maximal_profile_interval(const SpectralField& field, double t0,
                                        double t1, double step,
                                        const SymbolKind& kind,
                                        const SpatialGrid& grid) {
  require(t1 > t0, "maximal_profile_interval: need t1 > t0");
  require(step > 0.0, "maximal_profile_interval: step must be positive");
  const double allowed = max_interval_step(field, kind);
  if (step > allowed) {
    std::ostringstream os;
    os << "maximal_profile_interval: sampling step " << step
       << " exceeds pi/(4 max|sigma|) = " << allowed;
    throw std::invalid_argument(os.str());
  }
  const int n = static_cast<int>(std::ceil((t1 - t0) / step));
  const double actual = (t1 - t0) / n;
  std::vector<double> times(n);
  for (int i = 1; i <= n; ++i) times[i - 1] = t0 + i * actual;
  return maximal_profile(field, times, kind, grid);
}

SpatialGrid default_profile_grid(const SpectralField& field,
                                 double half_width) {
  const double r = field.support_radius();
  const double step = std::min(1.0 / 64, r > 0.0 ? 1.0 / (8.0 * r) : 1.0 / 64);
  const int dim = field.dimension();
  return SpatialGrid(std::vector<double>(dim, 0.0), half_width,
                     std::vector<double>(dim, step));
}

double ball_l2(const MaximalProfile& profile, std::span<const double> center,
               double radius) {
  const int dim = profile.grid.dimension();
  require(center.size() == static_cast<std::size_t>(dim),
          "ball_l2: center dimension mismatch");
  require(radius > 0.0, "ball_l2: radius must be positive");
  for (int i = 0; i < dim; ++i) {
    const double lo = profile.grid.center[i] - profile.grid.half_width;
    const double hi = profile.grid.center[i] + profile.grid.half_width;
    require(center[i] - radius >= lo - 1e-12 && center[i] + radius <= hi + 1e-12,
            "ball_l2: grid does not cover the ball");
  }
  const double vol = profile.grid.cell_volume();
  double sum = 0.0;
  std::vector<int> idx(dim, 0);
  std::size_t cell = 0;
  while (true) {
    double d2 = 0.0;
    for (int i = 0; i < dim; ++i) {
      const double d = profile.grid.coordinate(i, idx[i]) - center[i];
      d2 += d * d;
    }
    if (d2 <= radius * radius)
      sum += profile.sup_values[cell] * profile.sup_values[cell] * vol;
    ++cell;
    int axis = dim - 1;
    while (axis >= 0 && ++idx[axis] >= profile.grid.axis_count(axis))
      idx[axis--] = 0;
    if (axis < 0) break;
  }
  return std::sqrt(sum);
}

double threshold_s0(const ThresholdQuery& q) {
  require(q.N >= 1, "threshold_s0: N must be >= 1");
  require(q.r > 0.0, "threshold_s0: r must be positive");
  const double cont = q.N / (2.0 * (q.N + 1.0));
  const double arm = std::isinf(q.r)
                         ? q.N / (q.N + 1.0)
                         : q.r / ((q.N + 1.0) * q.r / q.N + 1.0);
  switch (q.family) {
    case ThresholdFamily::Schrodinger:
      return std::min(cont, arm);
    case ThresholdFamily::Fractional:
      require(q.a > 0.0, "threshold_s0: fractional order must be positive");
      if (q.a < 1.0) {
        if (q.N >= 2)
          throw std::invalid_argument(
              "threshold_s0: sharp value open for 0 < a < 1, N >= 2");
        return std::min(q.a / 4.0, q.a / 2.0 * arm);
      }
      return std::min(cont, q.a / 2.0 * arm);
    case ThresholdFamily::Nonelliptic: {
      const double seq_arm = std::isinf(q.r) ? 1.0 : q.r / (q.r + 1.0);
      return std::min(0.5, seq_arm);
    }
  }
  throw std::invalid_argument("threshold_s0: unsupported family");
}

double threshold_inverse_r(double s) {
  require(s > 0.0 && s < 0.5, "threshold_inverse_r: need 0 < s < 1/2");
  return s / (1.0 - s);
}

std::pair<double, double> fit_power_law(
    std::span<const std::pair<double, double>> rows) {
  require(rows.size() >= 3, "fit_power_law: need at least 3 rows");
  const std::size_t n = rows.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    require(rows[i].first > 0.0 && rows[i].second > 0.0,
            "fit_power_law: data must be positive");
    lx[i] = std::log(rows[i].first);
    ly[i] = std::log(rows[i].second);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  require(sxx > 0.0, "fit_power_law: degenerate fit (identical x values)");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double res = ly[i] - slope * lx[i] - intercept;
    ss += res * res;
  }
  const double se = std::sqrt(ss / (n - 2) / sxx);
  return {slope, se};
}

double focusing_sweep_ratio(const FocusingSpec& spec, double s, int nx1) {
  require(spec.N == 2, "focusing_sweep_ratio: implemented for N = 2");
  require(nx1 >= 2, "focusing_sweep_ratio: grid too coarse");
  const auto datum = build_focusing(spec);
  const auto times = focusing_time_sequence(spec);
  const std::size_t nt = times.values.size();
  const double two_pi = 2.0 * std::numbers::pi;

  const int nx2 = std::max(1200, static_cast<int>(std::ceil(10.0 * spec.cutoff_rho())));
  std::vector<double> gx1(nx1), gx2(nx2);
  for (int i = 0; i < nx1; ++i) gx1[i] = -1.0 + 2.0 * i / (nx1 - 1);
  for (int i = 0; i < nx2; ++i) gx2[i] = -1.0 + 2.0 * i / (nx2 - 1);

  // factor amplitudes: |e f(x)| = |e f1(x1)| * |e f2(x2)|
  std::vector<double> A(nt * nx1), B(nt * nx2);
  const auto kind = SymbolKind::elliptic();
  for (std::size_t it = 0; it < nt; ++it) {
    const double te = times.values[it] / two_pi;
    for (int i = 0; i < nx1; ++i) {
      const double x[1] = {gx1[i]};
      A[it * nx1 + i] = std::abs(evaluate(datum.f1, x, te, kind));
    }
    for (int i = 0; i < nx2; ++i) {
      const double x[1] = {gx2[i]};
      B[it * nx2 + i] = std::abs(evaluate(datum.f2, x, te, kind));
    }
  }

  const double dA = (gx1[1] - gx1[0]) * (gx2[1] - gx2[0]);
  double sum = 0.0;
  for (int i1 = 0; i1 < nx1; ++i1)
    for (int i2 = 0; i2 < nx2; ++i2) {
      if (gx1[i1] * gx1[i1] + gx2[i2] * gx2[i2] > 1.0) continue;
      double sup = 0.0;
      for (std::size_t it = 0; it < nt; ++it)
        sup = std::max(sup, A[it * nx1 + i1] * B[it * nx2 + i2]);
      sum += sup * sup * dA;
    }
  return std::sqrt(sum) / sobolev_norm(datum.field, s);
}

SweepResult run_R_sweep(const FocusingSpec& base,
                        std::span<const double> R_list, double s) {
  base.validate();
  SweepResult out;
  for (double R : R_list) {
    FocusingSpec spec = base;
    spec.R = R;
    const double scale =
        std::pow(R / base.R, (base.r + 1.0) * base.beta() / 2.0);
    if (base.lattice_scale) spec.lattice_scale = *base.lattice_scale * scale;
    if (base.freq_cutoff) spec.freq_cutoff = *base.freq_cutoff * scale;
    out.rows.emplace_back(R, focusing_sweep_ratio(spec, s));
  }
  const auto [slope, se] = fit_power_law(out.rows);
  out.fitted_exponent = slope;
  out.stderr_ = se;
  return out;
}

double interval_sup_experiment(double lambda, double interval_length,
                               const SymbolKind& kind, int points_per_axis) {
  require(lambda > 1.0, "interval_sup_experiment: lambda must exceed 1");
  const double lo = std::pow(lambda, -2.0), hi = 1.0 / lambda;
  require(interval_length >= lo * (1.0 - 1e-12) &&
              interval_length <= hi * (1.0 + 1e-12),
          "interval_sup_experiment: |I| outside [lambda^-2, lambda^-1]");
  require(kind.tag == SymbolKind::Tag::Nonelliptic ||
              kind.tag == SymbolKind::Tag::Hyperbolic2D,
          "interval_sup_experiment: saddle symbol required");
  require(points_per_axis >= 4, "interval_sup_experiment: grid too coarse");

  // indicator of the annulus {lambda/2 <= |xi| <= lambda}
  const double cell = 2.0 * lambda / points_per_axis;
  std::vector<FrequencyAtom> atoms;
  for (int i = 0; i < points_per_axis; ++i)
    for (int k = 0; k < points_per_axis; ++k) {
      const double xi1 = -lambda + (i + 0.5) * cell;
      const double xi2 = -lambda + (k + 0.5) * cell;
      const double r = std::hypot(xi1, xi2);
      if (r >= lambda / 2.0 && r <= lambda)
        atoms.push_back({{xi1, xi2}, 1.0, cell * cell});
    }
  SpectralField field(2, std::move(atoms));

  const double step = std::min(max_interval_step(field, kind), interval_length);
  const auto grid = default_profile_grid(field, 1.0);
  const auto prof =
      maximal_profile_interval(field, 0.0, interval_length, step, kind, grid);
  const double center[2] = {0.0, 0.0};
  return ball_l2(prof, center, 1.0) / l2_norm(field);
}

SweepResult annulus_scaling_experiment(double k, double j, int trials,
                                 std::uint64_t seed) {
  require(k > 0.0 && k < j && j < 2.0 * k,
          "annulus_scaling_experiment: need 0 < k < j < 2k");
  require(trials >= 1, "annulus_scaling_experiment: need at least one trial");
  const double hi = std::exp2(k), lo = std::exp2(k - 1.0);
  const int n = 32;
  const double cell = 2.0 * hi / n;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto kind = SymbolKind::elliptic();

  SweepResult out;
  double max_ratio = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<FrequencyAtom> atoms;
    for (int i = 0; i < n; ++i)
      for (int m = 0; m < n; ++m) {
        const double xi1 = -hi + (i + 0.5) * cell;
        const double xi2 = -hi + (m + 0.5) * cell;
        const double r = std::hypot(xi1, xi2);
        if (r >= lo && r < hi)
          atoms.push_back({{xi1, xi2}, Complex(gauss(rng), gauss(rng)),
                           cell * cell});
      }
    SpectralField field(2, std::move(atoms));
    const double tmax = std::exp2(-j);
    const double step = std::min(max_interval_step(field, kind), tmax);
    const auto grid = default_profile_grid(field, 1.0);
    const auto prof = maximal_profile_interval(field, 0.0, tmax, step, kind, grid);
    const double center[2] = {0.0, 0.0};
    const double ratio = ball_l2(prof, center, 1.0) / l2_norm(field);
    out.rows.emplace_back(trial + 1, ratio);
    max_ratio = std::max(max_ratio, ratio);
  }
  // normalized peak against the 2^{(2k-j) N/(2(N+1))} prediction, N = 2
  out.fitted_exponent = max_ratio / std::exp2((2.0 * k - j) / 3.0);
  out.stderr_ = 0.0;
  return out;
}

}  // namespace schrolab

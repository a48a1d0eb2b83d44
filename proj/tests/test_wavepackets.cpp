#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "schrolab/wavepackets.hpp"

using namespace schrolab;

namespace {

// field with atoms on the aligned frequency grid inside the annulus
SpectralField aligned_field(const PacketLattice& lat, std::uint64_t seed,
                            int atoms_per_dim = 0) {
  const double h = lat.grid_step();
  const int dim = lat.dim;
  const double lo = std::exp2(lat.k - 1.0), hi = std::exp2(lat.k);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<FrequencyAtom> atoms;
  const long mmax = static_cast<long>(std::floor(hi / h));
  const long step = atoms_per_dim > 0
                        ? std::max<long>(1, 2 * mmax / atoms_per_dim)
                        : 1;
  std::vector<long> m(dim, -mmax);
  while (true) {
    std::vector<double> xi(dim);
    double r2 = 0.0;
    for (int i = 0; i < dim; ++i) {
      xi[i] = (m[i] + 0.5) * h;
      r2 += xi[i] * xi[i];
    }
    const double r = std::sqrt(r2);
    if (r >= lo && r < hi)
      atoms.push_back({xi, Complex(g(rng), g(rng)), std::pow(h, dim)});
    int axis = 0;
    while (axis < dim && (m[axis] += step) >= mmax) {
      m[axis] = -mmax;
      ++axis;
    }
    if (axis == dim) break;
  }
  return SpectralField(dim, std::move(atoms));
}

// cube whose center sits closest to the middle of the annulus
std::size_t mid_cube(const PacketLattice& lat) {
  const double target = 0.75 * std::exp2(lat.k);
  std::size_t best = 0;
  double best_err = std::numeric_limits<double>::infinity();
  for (std::size_t ti = 0; ti < lat.theta_centers.size(); ++ti) {
    double r2 = 0.0;
    for (double c : lat.theta_centers[ti]) r2 += c * c;
    const double err = std::abs(std::sqrt(r2) - target);
    if (err < best_err) {
      best_err = err;
      best = ti;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("window profile is a square partition of unity") {
  for (double u = -0.49; u < 0.5; u += 0.037) {
    double total = 0.0;
    for (int m = -2; m <= 2; ++m) {
      const double w = window_profile(u - m);
      total += w * w;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(window_profile(0.0) == doctest::Approx(1.0));
  CHECK(window_profile(0.25) == doctest::Approx(1.0));  // flat on |u| <= 1/3
  CHECK(window_profile(2.0 / 3.0) == 0.0);
  CHECK(window_profile(-0.9) == 0.0);
}

TEST_CASE("lattice construction validates its inputs") {
  CHECK_THROWS_AS((void)make_packet_lattice(1, 5.0, 8.0, 60),
                  std::invalid_argument);  // period not a power of two
  CHECK_THROWS_AS((void)make_packet_lattice(1, 5.0, 11.0, 64),
                  std::invalid_argument);  // j >= 2k
  CHECK_THROWS_AS((void)make_packet_lattice(1, 8.0, 5.0, 64),
                  std::invalid_argument);  // j <= k
  const auto lat = make_packet_lattice(2, 5.0, 8.0, 64);
  CHECK(lat.side() == doctest::Approx(8.0));
  CHECK(lat.spacing() == doctest::Approx(0.125));
  CHECK(lat.grid_step() * 64.0 == doctest::Approx(2.0 * std::acos(-1.0) * 8.0));
  CHECK(lat.tube_radius() == doctest::Approx(std::exp2(3.0 * (-1 + 1.25e-4))));
  // every frequency cube window meets the enlarged annulus
  for (const auto& c : lat.theta_centers) {
    const double r = std::hypot(c[0], c[1]);
    CHECK(r > 16.0 - 2.5 * 8.0);  // inner edge minus window reach
    CHECK(r < 32.0 + 2.5 * 8.0);
  }
  const std::vector<int> n{3, -5};
  const auto c = lat.nu_center(n);
  CHECK(c[0] == doctest::Approx(0.375));
  CHECK(c[1] == doctest::Approx(-0.625));
}

TEST_CASE("tight frame and exact reconstruction on the aligned grid") {
  for (int dim : {1, 2}) {
    const auto lat = make_packet_lattice(dim, 4.0, 6.0, 32);
    const auto f = aligned_field(lat, 17u + dim);
    REQUIRE(f.size() > 0);
    const auto coeffs = decompose(f, lat);
    const double norm2 = l2_norm(f) * l2_norm(f);
    CHECK(coeffs.energy() / norm2 == doctest::Approx(1.0).epsilon(1e-10));

    const auto back = reconstruct(coeffs);
    REQUIRE(back.size() == f.size());
    double err2 = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
      err2 += std::norm(back.atoms()[i].amplitude - f.atoms()[i].amplitude) *
              f.atoms()[i].weight;
    CHECK(std::sqrt(err2) / l2_norm(f) < 1e-10);
  }
}

TEST_CASE("decompose rejects fields off the annulus") {
  const auto lat = make_packet_lattice(1, 4.0, 6.0, 32);
  const SpectralField low(1, {{{0.5}, Complex(1.0, 0.0), 1.0}});
  CHECK_THROWS_AS((void)decompose(low, lat), std::invalid_argument);
}

TEST_CASE("coefficient accessor matches the stored grid") {
  const auto lat = make_packet_lattice(1, 4.0, 6.0, 32);
  const auto f = aligned_field(lat, 23);
  const auto coeffs = decompose(f, lat);
  REQUIRE_FALSE(coeffs.blocks.empty());
  const auto& blk = coeffs.blocks.front();
  const std::vector<int> n{-3};
  CHECK(coeffs.coefficient(blk.theta_index, n) ==
        blk.grid[coeffs.flat_index(n)]);
}

TEST_CASE("single packet evolves along its tube") {
  const auto lat = make_packet_lattice(1, 4.0, 6.0, 32);
  const std::size_t ti = mid_cube(lat);
  const std::vector<int> n{2};
  const auto packet = packet_field(lat, ti, n, 128);

  // the packet concentrates near c(nu) - 2 t c(theta) under the evolution
  const double t = 0.5 * std::exp2(-lat.j);
  const double drift = lat.nu_center(n)[0] - 2.0 * t * lat.theta_centers[ti][0];
  const auto kind = SymbolKind::elliptic();
  double best = 0.0, best_x = 0.0;
  for (int i = -400; i <= 400; ++i) {
    const double x = drift + i * lat.spacing() / 50.0;
    const double v = std::abs(evaluate(packet, std::vector<double>{x}, t, kind));
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  CHECK(std::abs(best_x - drift) <= lat.tube_radius());

  std::vector<std::pair<std::vector<double>, double>> samples;
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ux(-1.5, 1.5), ut(1e-4, 1.0);
  for (int i = 0; i < 60; ++i)
    samples.push_back({{drift + ux(rng)}, ut(rng) * std::exp2(-lat.j)});
  const auto rep = tube_envelope_check(lat, ti, n, samples, 128);
  CHECK(rep.pass);
  CHECK(rep.c4 <= 1e3);
  CHECK(rep.c2 <= rep.c4 + 1e3);
}

TEST_CASE("distant coefficients vanish for a compact bump") {
  // field = one packet; coefficients centered far from its nu must be tiny
  const auto lat = make_packet_lattice(1, 4.0, 6.0, 64);
  const std::size_t ti = mid_cube(lat);
  const std::vector<int> n{0};
  const auto packet = packet_field(lat, ti, n, 64);
  const auto coeffs = decompose(packet, lat);
  double near = 0.0, mid = 0.0, far = 0.0;
  for (const auto& blk : coeffs.blocks)
    for (std::size_t flat = 0; flat < blk.grid.size(); ++flat) {
      const int idx = static_cast<int>(flat);
      const int sn = idx >= 32 ? idx - 64 : idx;
      const double dist = std::abs(lat.nu_center(std::vector<int>{sn})[0]);
      (dist <= 1.0 ? near : dist <= 4.0 ? mid : far) +=
          std::norm(blk.grid[flat]);
    }
  // polynomial tail: most energy sits near the packet center
  const double total = near + mid + far;
  CHECK(near >= 0.85 * total);
  CHECK(far <= 0.05 * total);
}

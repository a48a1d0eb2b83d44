#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "doctest.h"
#include "schrolab/spectral.hpp"

using namespace schrolab;

namespace {

// adaptive Simpson quadrature of integral_lo^hi e^{i(x xi + t sigma(xi))} dxi
Complex simpson(double lo, double hi, const std::function<Complex(double)>& f) {
  const double m = 0.5 * (lo + hi);
  return (hi - lo) / 6.0 * (f(lo) + 4.0 * f(m) + f(hi));
}

Complex adaptive(double lo, double hi, const std::function<Complex(double)>& f,
                 double tol, int depth = 0) {
  const double m = 0.5 * (lo + hi);
  const Complex whole = simpson(lo, hi, f);
  const Complex half = simpson(lo, m, f) + simpson(m, hi, f);
  if (depth > 24 || std::abs(half - whole) < 15.0 * tol) return half;
  return adaptive(lo, m, f, tol / 2, depth + 1) +
         adaptive(m, hi, f, tol / 2, depth + 1);
}

}  // namespace

TEST_CASE("symbol values") {
  const std::vector<double> xi2{3.0, -2.0};
  CHECK(symbol_value(SymbolKind::elliptic(), xi2) == doctest::Approx(13.0));
  CHECK(symbol_value(SymbolKind::fractional(1.5), xi2) ==
        doctest::Approx(std::pow(13.0, 0.75)));
  CHECK(symbol_value(SymbolKind::nonelliptic({+1, -1}), xi2) ==
        doctest::Approx(9.0 - 4.0));
  CHECK(symbol_value(SymbolKind::hyperbolic2d(), xi2) == doctest::Approx(-6.0));
  const std::vector<double> xi3{3.0, -2.0, 1.0};
  CHECK(symbol_value(SymbolKind::saddle3d(+1), xi3) == doctest::Approx(-5.0));
  CHECK(symbol_value(SymbolKind::saddle3d(-1), xi3) == doctest::Approx(-7.0));
  CHECK_THROWS_AS((void)symbol_value(SymbolKind::hyperbolic2d(), xi3),
                  std::invalid_argument);
}

TEST_CASE("indicator evolution matches adaptive quadrature") {
  // e^{it xi^2} chi_{[lo,hi)} evaluated at x, against direct integration
  const double lo = -1.25, hi = 2.0;
  const auto field = interval_indicator(lo, hi, 4096);
  const auto kind = SymbolKind::elliptic();
  for (const auto& [x, t] : {std::pair{0.3, 0.2}, {-1.7, 0.05}, {2.0, 1.0}}) {
    const Complex got = evaluate(field, std::vector<double>{x}, t, kind);
    const Complex want = adaptive(
        lo, hi,
        [&](double xi) { return std::polar(1.0, x * xi + t * xi * xi); },
        1e-12);
    CHECK(std::abs(got - want) < 1e-5);
  }
}

TEST_CASE("propagation is unitary and a group") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<FrequencyAtom> atoms;
  for (int i = 0; i < 200; ++i)
    atoms.push_back({{g(rng), g(rng)}, Complex(g(rng), g(rng)),
                     std::abs(g(rng)) + 0.1});
  const SpectralField f(2, atoms);
  const auto kind = SymbolKind::nonelliptic({+1, -1});
  const auto ft = propagate(f, 0.37, kind);
  CHECK(l2_norm(ft) == doctest::Approx(l2_norm(f)).epsilon(1e-13));
  CHECK(sobolev_norm(ft, 0.75) ==
        doctest::Approx(sobolev_norm(f, 0.75)).epsilon(1e-13));
  const auto two_step = propagate(propagate(f, 0.21, kind), 0.16, kind);
  for (std::size_t i = 0; i < f.size(); ++i)
    CHECK(std::abs(two_step.atoms()[i].amplitude - ft.atoms()[i].amplitude) <
          1e-13);
  // t = 0 is the identity
  const auto id = propagate(f, 0.0, kind);
  for (std::size_t i = 0; i < f.size(); ++i)
    CHECK(id.atoms()[i].amplitude == f.atoms()[i].amplitude);
}

TEST_CASE("l2 norm against reversed-order summation") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<FrequencyAtom> atoms;
  for (int i = 0; i < 500; ++i)
    atoms.push_back({{u(rng)}, Complex(u(rng), u(rng)), 0.5 + 0.5 * u(rng)});
  const SpectralField f(1, atoms);
  double rev = 0.0;
  for (auto it = atoms.rbegin(); it != atoms.rend(); ++it)
    rev += std::norm(it->amplitude) * it->weight;
  CHECK(l2_norm(f) == doctest::Approx(std::sqrt(rev)).epsilon(1e-13));
}

TEST_CASE("littlewood-paley pieces partition the atom set") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-40.0, 40.0);
  std::vector<FrequencyAtom> atoms;
  for (int i = 0; i < 300; ++i)
    atoms.push_back({{u(rng), u(rng)}, Complex(1.0, 0.0), 1.0});
  const SpectralField f(2, atoms);
  const auto pieces = littlewood_paley(f);
  std::size_t total = 0;
  double norm2 = 0.0;
  for (const auto& [k, piece] : pieces) {
    total += piece.size();
    norm2 += l2_norm(piece) * l2_norm(piece);
    for (const auto& a : piece.atoms()) {
      const double radius = std::hypot(a.xi[0], a.xi[1]);
      if (k == 0) {
        CHECK(radius < 1.0);
      } else {
        CHECK(radius >= std::exp2(k - 1));
        CHECK(radius < std::exp2(k));
      }
    }
  }
  CHECK(total == f.size());
  CHECK(std::sqrt(norm2) == doctest::Approx(l2_norm(f)).epsilon(1e-13));
}

TEST_CASE("indicators carry exact measure as total weight") {
  const auto seg = interval_indicator(0.25, 1.75, 37);
  double w = 0.0;
  for (const auto& a : seg.atoms()) w += a.weight;
  CHECK(w == doctest::Approx(1.5).epsilon(1e-14));

  const std::vector<double> c{0.5, -0.25};
  const auto ball = ball_indicator(c, 2.0, 2, 41);
  w = 0.0;
  for (const auto& a : ball.atoms()) {
    w += a.weight;
    CHECK(std::hypot(a.xi[0] - c[0], a.xi[1] - c[1]) <= 2.0);
  }
  CHECK(w == doctest::Approx(4.0 * unit_ball_volume(2)).epsilon(1e-12));
  CHECK(unit_ball_volume(2) == doctest::Approx(std::numbers::pi));
  CHECK(unit_ball_volume(3) ==
        doctest::Approx(4.0 * std::numbers::pi / 3.0));
}

TEST_CASE("tensor, shift, scale, merge") {
  const auto a = interval_indicator(0.0, 1.0, 3);
  const auto b = interval_indicator(-1.0, 1.0, 5, Complex(0.0, 2.0));
  const auto ab = tensor_product(a, b);
  CHECK(ab.dimension() == 2);
  CHECK(ab.size() == 15);
  CHECK(l2_norm(ab) == doctest::Approx(l2_norm(a) * l2_norm(b)));

  const auto shifted = shift_frequency(a, std::vector<double>{3.0});
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(shifted.atoms()[i].xi[0] ==
          doctest::Approx(a.atoms()[i].xi[0] + 3.0));
  // shift acts as modulation: values multiply by e^{3ix}
  const std::vector<double> x{0.7};
  CHECK(std::abs(evaluate(shifted, x, 0.0, SymbolKind::elliptic()) -
                 std::polar(1.0, 3.0 * x[0]) *
                     evaluate(a, x, 0.0, SymbolKind::elliptic())) < 1e-13);

  const auto scaled = scale_amplitude(a, Complex(0.0, -2.0));
  CHECK(l2_norm(scaled) == doctest::Approx(2.0 * l2_norm(a)));

  const auto merged = merge_fields(a, shifted);
  CHECK(merged.size() == 2 * a.size());
  CHECK_THROWS_AS((void)merge_fields(a, ab), std::invalid_argument);
}

TEST_CASE("json round trip is bit-faithful") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<FrequencyAtom> atoms;
  for (int i = 0; i < 64; ++i)
    atoms.push_back({{g(rng), g(rng), g(rng)}, Complex(g(rng), g(rng)),
                     std::abs(g(rng))});
  const SpectralField f(3, atoms);
  const auto back = field_from_json(field_to_json(f));
  REQUIRE(back.size() == f.size());
  CHECK(back.dimension() == 3);
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(back.atoms()[i].amplitude == f.atoms()[i].amplitude);
    CHECK(back.atoms()[i].weight == f.atoms()[i].weight);
    for (int d = 0; d < 3; ++d)
      CHECK(back.atoms()[i].xi[d] == f.atoms()[i].xi[d]);
  }
}

TEST_CASE("spatial grid geometry") {
  const SpatialGrid grid({0.0, 1.0}, 1.0, {0.25, 0.5});
  CHECK(grid.axis_count(0) == 8);
  CHECK(grid.axis_count(1) == 4);
  CHECK(grid.total_count() == 32);
  CHECK(grid.cell_volume() == doctest::Approx(0.125));
  // cell-centered: first center at center - half_width + step/2
  CHECK(grid.coordinate(0, 0) == doctest::Approx(-1.0 + 0.125));
  CHECK(grid.coordinate(1, 3) == doctest::Approx(1.0 - 1.0 + 3.5 * 0.5));
}

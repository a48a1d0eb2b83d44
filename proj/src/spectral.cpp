#include "schrolab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json.hpp"

namespace schrolab {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

double norm_sq(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

}  // namespace

SymbolKind SymbolKind::elliptic() { return {}; }

SymbolKind SymbolKind::fractional(double a) {
  require(std::isfinite(a) && a > 0.0, "fractional order must be positive");
  SymbolKind k;
  k.tag = Tag::Fractional;
  k.a = a;
  return k;
}

SymbolKind SymbolKind::nonelliptic(std::vector<int> signs) {
  require(signs.size() >= 2, "nonelliptic sign vector needs length >= 2");
  require(signs[0] == +1 && signs[1] == -1,
          "nonelliptic signs must start +1, -1");
  for (int s : signs) require(s == 1 || s == -1, "signs must be +1 or -1");
  SymbolKind k;
  k.tag = Tag::Nonelliptic;
  k.signs = std::move(signs);
  return k;
}

SymbolKind SymbolKind::hyperbolic2d() {
  SymbolKind k;
  k.tag = Tag::Hyperbolic2D;
  return k;
}

SymbolKind SymbolKind::saddle3d(int sign) {
  require(sign == 1 || sign == -1, "saddle sign must be +1 or -1");
  SymbolKind k;
  k.tag = Tag::Saddle3D;
  k.saddle_sign = sign;
  return k;
}

std::string SymbolKind::name() const {
  switch (tag) {
    case Tag::Elliptic: return "elliptic";
    case Tag::Fractional: return "fractional(a=" + std::to_string(a) + ")";
    case Tag::Nonelliptic: return "nonelliptic";
    case Tag::Hyperbolic2D: return "hyperbolic2d";
    case Tag::Saddle3D: return saddle_sign > 0 ? "saddle3d(+)" : "saddle3d(-)";
  }
  return "?";
}

double symbol_value(const SymbolKind& kind, std::span<const double> xi) {
  switch (kind.tag) {
    case SymbolKind::Tag::Elliptic:
      return norm_sq(xi);
    case SymbolKind::Tag::Fractional:
      return std::pow(norm_sq(xi), kind.a / 2.0);
    case SymbolKind::Tag::Nonelliptic: {
      require(xi.size() == kind.signs.size(),
              "symbol_value: dimension mismatch");
      double s = 0.0;
      for (std::size_t i = 0; i < xi.size(); ++i)
        s += kind.signs[i] * xi[i] * xi[i];
      return s;
    }
    case SymbolKind::Tag::Hyperbolic2D:
      require(xi.size() == 2, "symbol_value: hyperbolic2d needs dimension 2");
      return xi[0] * xi[1];
    case SymbolKind::Tag::Saddle3D:
      require(xi.size() == 3, "symbol_value: saddle3d needs dimension 3");
      return xi[0] * xi[1] + kind.saddle_sign * xi[2] * xi[2];
  }
  return 0.0;
}

SpectralField::SpectralField(int dimension, std::vector<FrequencyAtom> atoms)
    : dim_(dimension), atoms_(std::move(atoms)) {
  require(dim_ >= 1, "dimension must be >= 1");
  for (const auto& a : atoms_) {
    require(static_cast<int>(a.xi.size()) == dim_,
            "atom dimension mismatch");
    require(a.weight > 0.0, "atom weight must be positive");
    require(std::isfinite(a.amplitude.real()) &&
                std::isfinite(a.amplitude.imag()),
            "atom amplitude must be finite");
    for (double c : a.xi) require(std::isfinite(c), "atom xi must be finite");
  }
  // distinct frequencies, checked via lexicographic sort of indices
  if (atoms_.size() > 1) {
    std::vector<std::size_t> order(atoms_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
      return atoms_[i].xi < atoms_[j].xi;
    });
    for (std::size_t i = 1; i < order.size(); ++i)
      require(atoms_[order[i - 1]].xi != atoms_[order[i]].xi,
              "atom frequencies must be pairwise distinct");
  }
}

double SpectralField::support_radius() const {
  double r2 = 0.0;
  for (const auto& a : atoms_) r2 = std::max(r2, norm_sq(a.xi));
  return std::sqrt(r2);
}

Complex evaluate(const SpectralField& field, std::span<const double> x,
                 double t, const SymbolKind& kind) {
  require(static_cast<int>(x.size()) == field.dimension(),
          "evaluate: dimension mismatch");
  Complex acc = 0.0;
  for (const auto& a : field.atoms()) {
    double phase = t * symbol_value(kind, a.xi);
    for (std::size_t i = 0; i < x.size(); ++i) phase += x[i] * a.xi[i];
    acc += a.amplitude * std::polar(a.weight, phase);
  }
  return acc;
}

SpectralField propagate(const SpectralField& field, double t,
                        const SymbolKind& kind) {
  std::vector<FrequencyAtom> atoms = field.atoms();
  for (auto& a : atoms)
    a.amplitude *= std::polar(1.0, t * symbol_value(kind, a.xi));
  return SpectralField(field.dimension(), std::move(atoms));
}

double l2_norm(const SpectralField& field) {
  double s = 0.0;
  for (const auto& a : field.atoms()) s += std::norm(a.amplitude) * a.weight;
  return std::sqrt(s);
}

double sobolev_norm(const SpectralField& field, double s) {
  double acc = 0.0;
  for (const auto& a : field.atoms())
    acc += std::pow(1.0 + norm_sq(a.xi), s) * std::norm(a.amplitude) *
           a.weight;
  return std::sqrt(acc);
}

std::map<int, SpectralField> littlewood_paley(const SpectralField& field) {
  std::map<int, std::vector<FrequencyAtom>> buckets;
  for (const auto& a : field.atoms()) {
    double r = std::sqrt(norm_sq(a.xi));
    int k = 0;
    if (r >= 1.0) k = static_cast<int>(std::floor(std::log2(r))) + 1;
    // guard against log2 rounding at shell boundaries
    while (k >= 1 && r < std::exp2(k - 1)) --k;
    while (r >= std::exp2(k)) ++k;
    buckets[k].push_back(a);
  }
  std::map<int, SpectralField> pieces;
  for (auto& [k, atoms] : buckets)
    pieces.emplace(k, SpectralField(field.dimension(), std::move(atoms)));
  return pieces;
}

SpatialGrid::SpatialGrid(std::vector<double> c, double hw,
                         std::vector<double> st)
    : center(std::move(c)), half_width(hw), step(std::move(st)) {
  require(half_width > 0.0, "grid half_width must be positive");
  require(center.size() == step.size(), "grid center/step size mismatch");
  for (double s : step)
    require(s > 0.0 && s <= 2.0 * half_width, "grid step out of range");
}

int SpatialGrid::axis_count(int axis) const {
  return std::max(1, static_cast<int>(std::lround(2.0 * half_width /
                                                  step[axis])));
}

std::size_t SpatialGrid::total_count() const {
  std::size_t n = 1;
  for (int d = 0; d < dimension(); ++d) n *= axis_count(d);
  return n;
}

double SpatialGrid::coordinate(int axis, int index) const {
  double s = 2.0 * half_width / axis_count(axis);
  return center[axis] - half_width + (index + 0.5) * s;
}

double SpatialGrid::cell_volume() const {
  double v = 1.0;
  for (int d = 0; d < dimension(); ++d)
    v *= 2.0 * half_width / axis_count(d);
  return v;
}

SpectralField interval_indicator(double lo, double hi, int points,
                                 Complex amplitude) {
  require(hi > lo, "interval_indicator: empty interval");
  require(points >= 1, "interval_indicator: need >= 1 point");
  double w = (hi - lo) / points;
  std::vector<FrequencyAtom> atoms;
  atoms.reserve(points);
  for (int i = 0; i < points; ++i)
    atoms.push_back({{lo + (i + 0.5) * w}, amplitude, w});
  return SpectralField(1, std::move(atoms));
}

double unit_ball_volume(int dim) {
  // V_d = pi^{d/2} / Gamma(d/2 + 1)
  return std::pow(std::numbers::pi, dim / 2.0) /
         std::tgamma(dim / 2.0 + 1.0);
}

SpectralField ball_indicator(std::span<const double> center, double radius,
                             int dim, int points_per_axis,
                             Complex amplitude) {
  require(static_cast<int>(center.size()) == dim,
          "ball_indicator: center dimension mismatch");
  require(radius > 0.0 && points_per_axis >= 1, "ball_indicator: bad params");
  double h = 2.0 * radius / points_per_axis;
  std::vector<FrequencyAtom> atoms;
  std::vector<int> idx(dim, 0);
  for (;;) {
    std::vector<double> xi(dim);
    double r2 = 0.0;
    for (int d = 0; d < dim; ++d) {
      double off = -radius + (idx[d] + 0.5) * h;
      xi[d] = center[d] + off;
      r2 += off * off;
    }
    if (r2 <= radius * radius) atoms.push_back({std::move(xi), amplitude, 1.0});
    int d = 0;
    while (d < dim && ++idx[d] == points_per_axis) idx[d++] = 0;
    if (d == dim) break;
  }
  require(!atoms.empty(), "ball_indicator: no interior points");
  double w = unit_ball_volume(dim) * std::pow(radius, dim) /
             static_cast<double>(atoms.size());
  for (auto& a : atoms) a.weight = w;
  return SpectralField(dim, std::move(atoms));
}

SpectralField tensor_product(const SpectralField& a, const SpectralField& b) {
  std::vector<FrequencyAtom> atoms;
  atoms.reserve(a.size() * b.size());
  for (const auto& pa : a.atoms())
    for (const auto& pb : b.atoms()) {
      FrequencyAtom at;
      at.xi = pa.xi;
      at.xi.insert(at.xi.end(), pb.xi.begin(), pb.xi.end());
      at.amplitude = pa.amplitude * pb.amplitude;
      at.weight = pa.weight * pb.weight;
      atoms.push_back(std::move(at));
    }
  return SpectralField(a.dimension() + b.dimension(), std::move(atoms));
}

SpectralField merge_fields(const SpectralField& a, const SpectralField& b) {
  require(a.dimension() == b.dimension(), "merge_fields: dimension mismatch");
  std::vector<FrequencyAtom> atoms = a.atoms();
  atoms.insert(atoms.end(), b.atoms().begin(), b.atoms().end());
  return SpectralField(a.dimension(), std::move(atoms));
}

SpectralField shift_frequency(const SpectralField& field,
                              std::span<const double> shift) {
  require(static_cast<int>(shift.size()) == field.dimension(),
          "shift_frequency: dimension mismatch");
  std::vector<FrequencyAtom> atoms = field.atoms();
  for (auto& a : atoms)
    for (std::size_t d = 0; d < shift.size(); ++d) a.xi[d] += shift[d];
  return SpectralField(field.dimension(), std::move(atoms));
}

SpectralField scale_amplitude(const SpectralField& field, Complex c) {
  std::vector<FrequencyAtom> atoms = field.atoms();
  for (auto& a : atoms) a.amplitude *= c;
  return SpectralField(field.dimension(), std::move(atoms));
}

std::string field_to_json(const SpectralField& field) {
  nlohmann::json j;
  j["dimension"] = field.dimension();
  auto& arr = j["atoms"] = nlohmann::json::array();
  for (const auto& a : field.atoms()) {
    nlohmann::json ja;
    ja["xi"] = a.xi;
    ja["re"] = a.amplitude.real();
    ja["im"] = a.amplitude.imag();
    ja["weight"] = a.weight;
    arr.push_back(std::move(ja));
  }
  return j.dump();
}

SpectralField field_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  int dim = j.at("dimension").get<int>();
  std::vector<FrequencyAtom> atoms;
  for (const auto& ja : j.at("atoms")) {
    FrequencyAtom a;
    a.xi = ja.at("xi").get<std::vector<double>>();
    a.amplitude = Complex(ja.at("re").get<double>(), ja.at("im").get<double>());
    a.weight = ja.at("weight").get<double>();
    atoms.push_back(std::move(a));
  }
  return SpectralField(dim, std::move(atoms));
}

}  // namespace schrolab

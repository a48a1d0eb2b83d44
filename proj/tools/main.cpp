#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "schrolab/counterexamples.hpp"
#include "schrolab/maximal.hpp"
#include "schrolab/sequences.hpp"
#include "schrolab/spectral.hpp"
#include "schrolab/wavepackets.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace schrolab;

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_atomic(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    os << text;
  }
  fs::rename(tmp, path);
}

struct RunContext {
  std::string command;
  json cfg;       // fully resolved (defaults + file + flags)
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  int jobs = 1;
};

int finish(const RunContext& ctx, const std::string& csv, json summary,
           bool pass) {
  fs::create_directories(ctx.out_dir);
  summary["pass"] = pass;
  json manifest{{"command", ctx.command},
                {"seed", ctx.seed},
                {"out", ctx.out_dir},
                {"jobs", ctx.jobs},
                {"config", ctx.cfg}};
  write_atomic(fs::path(ctx.out_dir) / "results.csv", csv);
  write_atomic(fs::path(ctx.out_dir) / "summary.json", summary.dump(2) + "\n");
  write_atomic(fs::path(ctx.out_dir) / "manifest.json",
               manifest.dump(2) + "\n");
  return pass ? 0 : 1;
}

void parallel_for(std::size_t n, int jobs,
                  const std::function<void(std::size_t)>& fn) {
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  for (int w = 0; w < jobs; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

constexpr const char* kPlotHint =
    "# gnuplot: plot 'results.csv' every ::1 using 1:2 with linespoints\n";

FocusingSpec focusing_from_cfg(const json& cfg) {
  FocusingSpec spec;
  spec.N = cfg.at("N").get<int>();
  spec.r = cfg.at("r").get<double>();
  spec.eps = cfg.at("eps").get<double>();
  spec.R = cfg.at("R").get<double>();
  const double S = cfg.at("S").get<double>();
  const double rho = cfg.at("rho").get<double>();
  if (S > 0.0) spec.lattice_scale = S;      // 0 = built-in scale law
  if (rho > 0.0) spec.freq_cutoff = rho;    // 0 = built-in cutoff law
  if (cfg.contains("theta") && cfg.at("theta").is_array())
    spec.theta = cfg.at("theta").get<std::vector<double>>();
  spec.validate();
  return spec;
}

// --- commands ---------------------------------------------------------------

int cmd_thresholds(const RunContext& ctx) {
  const auto& cfg = ctx.cfg;
  std::ostringstream csv;
  csv << kPlotHint << "family,dimension,continuous_s0,discrete_s0,r,a\n";
  const double r = cfg.at("r").get<double>();
  const auto cell = [&](ThresholdFamily fam, int N, double a) -> std::string {
    ThresholdQuery q{fam, N, r, a};
    ThresholdQuery qc{fam, N, std::numeric_limits<double>::infinity(), a};
    try {
      return fmt(threshold_s0(qc)) + "," + fmt(threshold_s0(q));
    } catch (const std::invalid_argument&) {
      return "open,open";
    }
  };
  const std::string family = cfg.at("family").get<std::string>();
  bool ok = true;
  if (family == "all") {
    const double ah = cfg.at("a_high").get<double>();
    const double al = cfg.at("a_low").get<double>();
    csv << "schrodinger,1," << cell(ThresholdFamily::Schrodinger, 1, 2.0)
        << "," << fmt(r) << ",\n";
    csv << "schrodinger,2," << cell(ThresholdFamily::Schrodinger, 2, 2.0)
        << "," << fmt(r) << ",\n";
    csv << "nonelliptic,2," << cell(ThresholdFamily::Nonelliptic, 2, 2.0)
        << "," << fmt(r) << ",\n";
    csv << "nonelliptic,3," << cell(ThresholdFamily::Nonelliptic, 3, 2.0)
        << "," << fmt(r) << ",\n";
    csv << "fractional,1," << cell(ThresholdFamily::Fractional, 1, ah) << ","
        << fmt(r) << "," << fmt(ah) << "\n";
    csv << "fractional,2," << cell(ThresholdFamily::Fractional, 2, ah) << ","
        << fmt(r) << "," << fmt(ah) << "\n";
    csv << "fractional,1," << cell(ThresholdFamily::Fractional, 1, al) << ","
        << fmt(r) << "," << fmt(al) << "\n";
    csv << "fractional,2," << cell(ThresholdFamily::Fractional, 2, al) << ","
        << fmt(r) << "," << fmt(al) << "\n";
    return finish(ctx, csv.str(), json{{"rows", 8}}, ok);
  }
  ThresholdFamily fam;
  if (family == "schrodinger")
    fam = ThresholdFamily::Schrodinger;
  else if (family == "fractional")
    fam = ThresholdFamily::Fractional;
  else if (family == "nonelliptic")
    fam = ThresholdFamily::Nonelliptic;
  else
    throw std::invalid_argument("thresholds: unknown family " + family);
  const int N = cfg.at("N").get<int>();
  const double a = cfg.at("a").get<double>();
  const std::string row = cell(fam, N, a);
  csv << family << "," << N << "," << row << "," << fmt(r) << ","
      << (family == "fractional" ? fmt(a) : "") << "\n";
  json summary{{"family", family}, {"N", N}, {"r", r}};
  const auto comma = row.find(',');
  summary["continuous_s0"] = row.substr(0, comma);
  summary["discrete_s0"] = row.substr(comma + 1);
  return finish(ctx, csv.str(), summary, ok);
}

int cmd_seq(const RunContext& ctx) {
  const auto& cfg = ctx.cfg;
  BlockSpec spec;
  spec.r = cfg.at("r").get<double>();
  spec.N = cfg.at("N").get<int>();
  spec.R1 = cfg.at("R1").get<double>();
  spec.block_count = cfg.at("blocks").get<int>();
  const auto seq = build_block_sequence(spec);
  const auto rep = weak_lr_quasinorm(seq.sequence, spec.r);

  std::ostringstream csv;
  csv << kPlotHint << "index,t_n\n";
  for (std::size_t i = 0; i < seq.sequence.values.size(); ++i)
    csv << (i + 1) << "," << fmt(seq.sequence.values[i]) << "\n";

  json blocks = json::array();
  for (const auto& b : seq.blocks)
    blocks.push_back(json{{"R", b.R},
                          {"interval_lo", b.interval_lo},
                          {"interval_hi", b.interval_hi},
                          {"count", b.count},
                          {"skipped", b.skipped}});
  const bool pass = rep.dyadic_sup <= 1.0 + 1e-12 && rep.quasinorm <= 2.0 + 1e-12;
  json summary{{"quasinorm", rep.quasinorm},
               {"dyadic_sup", rep.dyadic_sup},
               {"witness_index", rep.witness_index},
               {"witness_b", rep.witness_b},
               {"length", seq.sequence.values.size()},
               {"blocks", blocks}};
  return finish(ctx, csv.str(), summary, pass);
}

int cmd_focusing(const RunContext& ctx) {
  const auto& cfg = ctx.cfg;
  const auto spec = focusing_from_cfg(cfg);
  const auto datum = build_focusing(spec);
  const auto times = focusing_time_sequence(spec);

  std::ostringstream csv;
  csv << kPlotHint << "j,t_j,min_resonance_ratio,resonance_pass\n";
  bool pass = true;
  std::vector<ResonanceReport> reps(times.values.size());
  parallel_for(times.values.size(), ctx.jobs, [&](std::size_t jidx) {
    reps[jidx] = verify_resonance(spec, datum, jidx);
  });
  for (std::size_t jidx = 0; jidx < times.values.size(); ++jidx) {
    const auto& rep = reps[jidx];
    pass = pass && rep.pass;
    csv << (jidx + 1) << "," << fmt(times.values[jidx]) << ","
        << fmt(rep.min_ratio) << "," << (rep.pass ? 1 : 0) << "\n";
  }
  // negative control: half-step time perturbation must break the resonance
  const double spacing = 1.0 / (spec.lattice_S() * spec.lattice_S());
  const auto control = verify_resonance(spec, datum, 0, spacing / 2.0);
  pass = pass && !control.pass;

  // f1 focusing across the admissible window; f1 and its time coverage only
  // depend on R, so drop the desk-scale overrides here
  FocusingSpec f1_spec = spec;
  f1_spec.lattice_scale.reset();
  f1_spec.freq_cutoff.reset();
  const int f1_samples = cfg.at("f1_samples").get<int>();
  const double xmax = 0.5 * std::pow(spec.R, 1.0 - spec.beta());
  double min_f1 = std::numeric_limits<double>::infinity();
  for (int i = 0; i < f1_samples; ++i) {
    const double x1 = (i + 0.5) * xmax / f1_samples;
    const auto rep = verify_f1_focusing(f1_spec, datum, x1);
    min_f1 = std::min(min_f1, rep.ratio);
    pass = pass && rep.pass;
  }

  json summary{{"times", times.values.size()},
               {"omega1_measure", datum.omega1_measure},
               {"omega2_measure", datum.omega2_measure},
               {"omega2_centers", datum.omega2_centers.size()},
               {"control_min_ratio", control.min_ratio},
               {"control_breaks_resonance", !control.pass},
               {"min_f1_ratio", min_f1}};
  return finish(ctx, csv.str(), summary, pass);
}

int cmd_nonelliptic(const RunContext& ctx) {
  const auto& cfg = ctx.cfg;
  NonellipticSpec spec;
  spec.r = cfg.at("r").get<double>();
  spec.eps = cfg.at("eps").get<double>();
  spec.b = cfg.at("b").get<double>();
  spec.M = cfg.at("M").get<double>();
  const int N = cfg.at("N").get<int>();
  const int samples = cfg.at("samples").get<int>();
  const auto datum = build_nonelliptic(spec, N);
  const auto rep = verify_nonelliptic(datum, samples, ctx.seed);

  std::ostringstream csv;
  csv << kPlotHint << "sample,sup\n";
  for (std::size_t i = 0; i < rep.sups.size(); ++i)
    csv << (i + 1) << "," << fmt(rep.sups[i]) << "\n";
  json summary{{"fraction", rep.fraction},
               {"min_sup", rep.min_sup},
               {"lambda", spec.lambda()},
               {"times", datum.times.values.size()}};
  return finish(ctx, csv.str(), summary, rep.pass);
}

int cmd_packets(const RunContext& ctx) {
  const auto& cfg = ctx.cfg;
  const int dim = cfg.at("dim").get<int>();
  const double k = cfg.at("k").get<double>();
  const double j = cfg.at("j").get<double>();
  const int period = cfg.at("period").get<int>();
  const int count = cfg.at("packets").get<int>();
  const auto lat = make_packet_lattice(dim, k, j, period);

  // seeded field: a few packets placed on the aligned frequency grid
  const double h = lat.grid_step();
  const double L = lat.side();
  std::mt19937_64 rng(ctx.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::size_t> eligible;
  for (std::size_t ti = 0; ti < lat.theta_centers.size(); ++ti) {
    double lo2 = 0.0, hi2 = 0.0;
    for (double c : lat.theta_centers[ti]) {
      const double a = std::abs(c) - 2.0 * L / 3.0, b = std::abs(c) + 2.0 * L / 3.0;
      lo2 += std::max(a, 0.0) * std::max(a, 0.0);
      hi2 += b * b;
    }
    if (std::sqrt(lo2) >= std::exp2(k - 1.0) - 1.5 * L &&
        std::sqrt(hi2) <= std::exp2(k) + 1.5 * L)
      eligible.push_back(ti);
  }
  if (eligible.empty())
    throw std::invalid_argument("packets: no interior frequency cube");

  std::map<std::vector<long>, Complex> amp_map;
  for (int p = 0; p < count; ++p) {
    const auto ti = eligible[rng() % eligible.size()];
    std::vector<int> n(dim);
    for (int i = 0; i < dim; ++i)
      n[i] = static_cast<int>(rng() % (period / 2)) - period / 4;
    const Complex a(gauss(rng), gauss(rng));
    const auto cnu = lat.nu_center(n);
    const auto& cth = lat.theta_centers[ti];
    std::vector<long> lo(dim), hi(dim);
    for (int i = 0; i < dim; ++i) {
      lo[i] = static_cast<long>(std::floor((cth[i] - 2 * L / 3) / h));
      hi[i] = static_cast<long>(std::ceil((cth[i] + 2 * L / 3) / h));
    }
    std::vector<long> m = lo;
    while (true) {
      std::vector<double> xi(dim);
      for (int i = 0; i < dim; ++i) xi[i] = (m[i] + 0.5) * h;
      const double w = packet_window(lat, ti, xi);
      if (w != 0.0) {
        double dot = 0.0;
        for (int i = 0; i < dim; ++i) dot += cnu[i] * xi[i];
        amp_map[m] += a * w * std::polar(1.0, -dot);
      }
      int axis = 0;
      while (axis < dim && ++m[axis] > hi[axis]) {
        m[axis] = lo[axis];
        ++axis;
      }
      if (axis == dim) break;
    }
  }
  std::vector<FrequencyAtom> atoms;
  const double cell = std::pow(h, dim);
  for (const auto& [m, a] : amp_map) {
    std::vector<double> xi(dim);
    for (int i = 0; i < dim; ++i) xi[i] = (m[i] + 0.5) * h;
    atoms.push_back({xi, a, cell});
  }
  SpectralField field(dim, std::move(atoms));

  const auto coeffs = decompose(field, lat);
  const double norm2 = coeffs.source_norm * coeffs.source_norm;
  const double frame = norm2 > 0.0 ? coeffs.energy() / norm2 : 0.0;
  const auto rec = reconstruct(coeffs);
  double err2 = 0.0;
  for (std::size_t i = 0; i < rec.size(); ++i)
    err2 += std::norm(rec.atoms()[i].amplitude -
                      coeffs.source_atoms[i].amplitude) *
            rec.atoms()[i].weight;
  const double rt_err =
      coeffs.source_norm > 0.0 ? std::sqrt(err2) / coeffs.source_norm : 0.0;

  std::ostringstream csv;
  csv << kPlotHint << "theta_center_1,theta_center_2,nu_center_1,nu_center_2,"
         "coef_sq,tube_dir_x1,tube_dir_x2,tube_dir_t\n";
  const int P = lat.period;
  const double floor_ = 1e-6 * coeffs.source_norm;
  for (const auto& b : coeffs.blocks) {
    const auto& cth = lat.theta_centers[b.theta_index];
    for (std::size_t flat = 0; flat < b.grid.size(); ++flat) {
      if (std::abs(b.grid[flat]) < floor_) continue;
      std::vector<int> n(dim);
      std::size_t rem = flat;
      for (int i = dim - 1; i >= 0; --i) {
        const int idx = static_cast<int>(rem % P);
        rem /= P;
        n[i] = idx >= P / 2 ? idx - P : idx;
      }
      const auto cnu = lat.nu_center(n);
      csv << fmt(cth[0]) << "," << fmt(dim > 1 ? cth[1] : 0.0) << ","
          << fmt(cnu[0]) << "," << fmt(dim > 1 ? cnu[1] : 0.0) << ","
          << fmt(std::norm(b.grid[flat])) << "," << fmt(-2.0 * cth[0]) << ","
          << fmt(dim > 1 ? -2.0 * cth[1] : 0.0) << ",1\n";
    }
  }
  const bool pass = frame >= 0.5 && frame <= 2.0 && rt_err <= 1e-3;
  json summary{{"frame_ratio", frame},
               {"roundtrip_error", rt_err},
               {"atoms", field.size()},
               {"live_thetas", coeffs.blocks.size()}};
  return finish(ctx, csv.str(), summary, pass);
}

int cmd_sweep(const RunContext& ctx) {
  const auto& cfg = ctx.cfg;
  const std::string kind = cfg.at("kind").get<std::string>();
  const double s = cfg.at("s").get<double>();
  const double tol = cfg.at("tolerance").get<double>();

  std::vector<double> params;
  std::vector<double> ratios;
  double expected = 0.0;
  if (kind == "focusing") {
    const auto base = focusing_from_cfg(cfg);
    params = cfg.at("R_list").get<std::vector<double>>();
    ratios.resize(params.size());
    const auto bounds = predicted_focusing_bounds(base, s);
    expected = bounds.lower_exponent - bounds.upper_exponent;
    parallel_for(params.size(), ctx.jobs, [&](std::size_t i) {
      FocusingSpec spec = base;
      spec.R = params[i];
      const double scale =
          std::pow(params[i] / base.R, (base.r + 1.0) * base.beta() / 2.0);
      if (base.lattice_scale) spec.lattice_scale = *base.lattice_scale * scale;
      if (base.freq_cutoff) spec.freq_cutoff = *base.freq_cutoff * scale;
      ratios[i] = focusing_sweep_ratio(spec, s);
    });
  } else if (kind == "nonelliptic") {
    NonellipticSpec spec;
    spec.r = cfg.at("r").get<double>();
    spec.eps = cfg.at("eps").get<double>();
    spec.b = cfg.at("b").get<double>();
    params = cfg.at("M_list").get<std::vector<double>>();
    ratios.resize(params.size());
    expected = 1.0 / (2.0 * (spec.r - spec.eps + 1.0));
    parallel_for(params.size(), ctx.jobs, [&](std::size_t i) {
      NonellipticSpec cell = spec;
      cell.M = params[i];
      const auto datum = build_nonelliptic(cell, 2);
      ratios[i] = nonelliptic_ratio(datum, s);
    });
  } else {
    throw std::invalid_argument("sweep: unknown kind " + kind);
  }

  std::vector<std::pair<double, double>> rows;
  for (std::size_t i = 0; i < params.size(); ++i)
    rows.emplace_back(params[i], ratios[i]);
  const auto [slope, se] = fit_power_law(rows);

  std::ostringstream csv;
  csv << kPlotHint << "param,ratio,predicted,residual\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double predicted =
        rows[0].second * std::pow(rows[i].first / rows[0].first, expected);
    csv << fmt(rows[i].first) << "," << fmt(rows[i].second) << ","
        << fmt(predicted) << "," << fmt(rows[i].second - predicted) << "\n";
  }
  const bool pass = std::abs(slope - expected) <= tol;
  json summary{{"kind", kind},
               {"s", s},
               {"fitted_exponent", slope},
               {"stderr", se},
               {"expected_exponent", expected},
               {"tolerance", tol}};
  return finish(ctx, csv.str(), summary, pass);
}

int cmd_interval(const RunContext& ctx) {
  const auto& cfg = ctx.cfg;
  const auto lambdas = cfg.at("lambda_list").get<std::vector<double>>();
  const int per = cfg.at("lengths_per_lambda").get<int>();
  if (lambdas.empty() || per < 1)
    throw std::invalid_argument("interval: empty cell grid");
  const auto kind = SymbolKind::nonelliptic({+1, -1});

  struct Cell {
    double lambda, length, ratio;
  };
  std::vector<Cell> cells;
  for (double l : lambdas)
    for (int i = 0; i < per; ++i) {
      const double expo = per == 1 ? -2.0 : -2.0 + static_cast<double>(i) / (per - 1);
      cells.push_back({l, std::pow(l, expo), 0.0});
    }
  parallel_for(cells.size(), ctx.jobs, [&](std::size_t i) {
    cells[i].ratio = interval_sup_experiment(cells[i].lambda, cells[i].length,
                                             kind);
  });

  const double lmin = *std::min_element(lambdas.begin(), lambdas.end());
  double envelope_c = 0.0;
  for (const auto& c : cells)
    if (c.lambda == lmin)
      envelope_c = std::max(envelope_c,
                            c.ratio / (c.lambda * std::sqrt(c.length)));
  double shortest_min = std::numeric_limits<double>::infinity();
  double shortest_max = 0.0;
  bool within_envelope = true;
  std::ostringstream csv;
  csv << kPlotHint << "lambda,length,ratio,envelope,residual\n";
  for (const auto& c : cells) {
    // factor-2 slack on the calibrated constant
    const double env = 2.0 * envelope_c * c.lambda * std::sqrt(c.length);
    within_envelope = within_envelope && c.ratio <= env * (1.0 + 1e-9);
    if (c.length == std::pow(c.lambda, -2.0)) {
      shortest_min = std::min(shortest_min, c.ratio);
      shortest_max = std::max(shortest_max, c.ratio);
    }
    csv << fmt(c.lambda) << "," << fmt(c.length) << "," << fmt(c.ratio) << ","
        << fmt(env) << "," << fmt(c.ratio - env) << "\n";
  }
  const double spread = shortest_max / shortest_min;
  const bool pass = spread < 2.0 && within_envelope;
  json summary{{"envelope_constant", envelope_c},
               {"shortest_interval_spread", spread},
               {"within_envelope", within_envelope}};
  return finish(ctx, csv.str(), summary, pass);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"schrolab: dispersive evolution laboratory"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".";
  std::uint64_t seed = 0;
  int jobs = 1;
  app.add_option("--config", config_path, "JSON config file")
      ->configurable(false);
  app.add_option("--seed", seed, "random seed");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--jobs", jobs, "parallel sweep cells")
      ->check(CLI::PositiveNumber);

  // defaults per subcommand; config file keys mirror these names
  const std::map<std::string, json> defaults{
      {"thresholds",
       {{"family", "all"}, {"N", 2}, {"r", 0.5}, {"a", 1.5}, {"a_high", 1.5},
        {"a_low", 0.5}}},
      {"seq", {{"r", 0.5}, {"N", 2}, {"R1", 4.0}, {"blocks", 6}}},
      {"focusing",
       {{"N", 2}, {"r", 0.5}, {"eps", 0.01}, {"R", 64.0}, {"S", 8.0},
        {"rho", 100.0}, {"f1_samples", 10}}},
      {"nonelliptic",
       {{"r", 0.5}, {"eps", 0.1}, {"b", 1.0 / 256}, {"M", 4.0}, {"N", 2},
        {"samples", 200}}},
      {"packets",
       {{"dim", 2}, {"k", 5.0}, {"j", 8.0}, {"period", 64}, {"packets", 3}}},
      {"sweep",
       {{"kind", "focusing"}, {"s", 0.0}, {"tolerance", 0.1},
        {"R_list", json::array({128.0, 362.0, 1024.0, 2896.0})},
        {"M_list", json::array({2.0, 4.0, 8.0, 16.0})},
        {"N", 2}, {"r", 0.5}, {"eps", 0.01}, {"R", 64.0}, {"S", 8.0},
        {"rho", 84.0}, {"b", 1.0 / 256}}},
      {"interval",
       {{"lambda_list", json::array({8.0, 16.0, 32.0})},
        {"lengths_per_lambda", 3}}}};

  std::map<std::string, std::map<std::string, double>> flag_values;
  std::map<std::string, std::map<std::string, std::string>> sflag_values;
  for (const auto& [name, def] : defaults) {
    auto* sub = app.add_subcommand(name);
    sub->fallthrough();  // lets --config/--seed/--out/--jobs follow the name
    for (const auto& [key, value] : def.items()) {
      if (value.is_number()) {
        auto& slot = flag_values[name][key];
        sub->add_option("--" + key, slot);
      } else if (value.is_string()) {
        auto& slot = sflag_values[name][key];
        sub->add_option("--" + key, slot);
      }
    }
  }

  CLI11_PARSE(app, argc, argv);
  auto* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();

  RunContext ctx;
  ctx.command = name;
  ctx.cfg = defaults.at(name);
  ctx.out_dir = out_dir;
  ctx.seed = seed;
  ctx.jobs = jobs;

  if (!config_path.empty()) {
    std::ifstream is(config_path);
    if (!is) {
      std::fprintf(stderr, "cannot open config %s\n", config_path.c_str());
      return 2;
    }
    json file_cfg = json::parse(is, nullptr, false);
    if (file_cfg.is_discarded() || !file_cfg.is_object()) {
      std::fprintf(stderr, "malformed JSON config %s\n", config_path.c_str());
      return 2;
    }
    for (const auto& [key, value] : file_cfg.items())
      if (ctx.cfg.contains(key)) ctx.cfg[key] = value;
  }
  for (const auto& [key, value] : flag_values[name])
    if (sub->count("--" + key)) {
      if (ctx.cfg[key].is_number_integer())
        ctx.cfg[key] = static_cast<long long>(value);
      else
        ctx.cfg[key] = value;
    }
  for (const auto& [key, value] : sflag_values[name])
    if (sub->count("--" + key)) ctx.cfg[key] = value;

  try {
    if (name == "thresholds") return cmd_thresholds(ctx);
    if (name == "seq") return cmd_seq(ctx);
    if (name == "focusing") return cmd_focusing(ctx);
    if (name == "nonelliptic") return cmd_nonelliptic(ctx);
    if (name == "packets") return cmd_packets(ctx);
    if (name == "sweep") return cmd_sweep(ctx);
    if (name == "interval") return cmd_interval(ctx);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s: %s\n", name.c_str(), e.what());
    return 1;
  }
  return 1;
}

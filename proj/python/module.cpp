#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "schrolab/counterexamples.hpp"
#include "schrolab/maximal.hpp"
#include "schrolab/sequences.hpp"
#include "schrolab/spectral.hpp"
#include "schrolab/wavepackets.hpp"

namespace py = pybind11;
using namespace schrolab;

PYBIND11_MODULE(_schrolab, m) {
  m.doc() = "band-limited dispersive evolutions, time sequences, and maximal "
            "function experiments";

  py::class_<SymbolKind>(m, "SymbolKind")
      .def_static("elliptic", &SymbolKind::elliptic)
      .def_static("fractional", &SymbolKind::fractional, py::arg("a"))
      .def_static("nonelliptic", &SymbolKind::nonelliptic, py::arg("signs"))
      .def_static("hyperbolic2d", &SymbolKind::hyperbolic2d)
      .def_static("saddle3d", &SymbolKind::saddle3d, py::arg("sign") = +1)
      .def("name", &SymbolKind::name)
      .def("__repr__",
           [](const SymbolKind& k) { return "SymbolKind(" + k.name() + ")"; });

  m.def("symbol_value", [](const SymbolKind& kind, std::vector<double> xi) {
    return symbol_value(kind, xi);
  });

  py::class_<FrequencyAtom>(m, "FrequencyAtom")
      .def(py::init([](std::vector<double> xi, Complex amp, double w) {
             return FrequencyAtom{std::move(xi), amp, w};
           }),
           py::arg("xi"), py::arg("amplitude"), py::arg("weight") = 1.0)
      .def_readonly("xi", &FrequencyAtom::xi)
      .def_readonly("amplitude", &FrequencyAtom::amplitude)
      .def_readonly("weight", &FrequencyAtom::weight);

  py::class_<SpectralField>(m, "SpectralField")
      .def(py::init<>())
      .def(py::init<int, std::vector<FrequencyAtom>>(), py::arg("dimension"),
           py::arg("atoms"))
      .def_property_readonly("dimension", &SpectralField::dimension)
      .def_property_readonly("atoms", &SpectralField::atoms)
      .def("__len__", &SpectralField::size)
      .def("support_radius", &SpectralField::support_radius);

  m.def(
      "evaluate",
      [](const SpectralField& f, std::vector<double> x, double t,
         const SymbolKind& kind) { return evaluate(f, x, t, kind); },
      py::arg("field"), py::arg("x"), py::arg("t"), py::arg("kind"));
  m.def("propagate", &propagate, py::arg("field"), py::arg("t"),
        py::arg("kind"));
  m.def("l2_norm", &l2_norm);
  m.def("sobolev_norm", &sobolev_norm, py::arg("field"), py::arg("s"));
  m.def("littlewood_paley", &littlewood_paley);
  m.def("interval_indicator", &interval_indicator, py::arg("lo"),
        py::arg("hi"), py::arg("points"), py::arg("amplitude") = Complex(1.0));
  m.def(
      "ball_indicator",
      [](std::vector<double> center, double radius, int dim, int ppa,
         Complex amp) { return ball_indicator(center, radius, dim, ppa, amp); },
      py::arg("center"), py::arg("radius"), py::arg("dim"),
      py::arg("points_per_axis"), py::arg("amplitude") = Complex(1.0));
  m.def("tensor_product", &tensor_product);
  m.def("merge_fields", &merge_fields);
  m.def(
      "shift_frequency",
      [](const SpectralField& f, std::vector<double> shift) {
        return shift_frequency(f, shift);
      },
      py::arg("field"), py::arg("shift"));
  m.def("scale_amplitude", &scale_amplitude);
  m.def("field_to_json", &field_to_json);
  m.def("field_from_json", &field_from_json);

  py::class_<TimeSequence>(m, "TimeSequence")
      .def(py::init([](std::vector<double> values, double r) {
             return TimeSequence{std::move(values), r};
           }),
           py::arg("values"), py::arg("r"))
      .def_readonly("values", &TimeSequence::values)
      .def_readonly("r", &TimeSequence::r)
      .def("validate", &TimeSequence::validate);

  m.def("sequence_beta", &sequence_beta, py::arg("r"), py::arg("N"));
  m.def(
      "build_block_sequence",
      [](double r, int N, double R1, int blocks) {
        return build_block_sequence({r, N, R1, blocks});
      },
      py::arg("r"), py::arg("N") = 2, py::arg("R1") = 4.0,
      py::arg("blocks") = 6);
  m.def("build_power_sequence", &build_power_sequence, py::arg("r"),
        py::arg("count"));
  m.def("weak_lr_quasinorm", &weak_lr_quasinorm, py::arg("sequence"),
        py::arg("r"));
  m.def("dyadic_count_bound", &dyadic_count_bound, py::arg("sequence"),
        py::arg("r"));
  m.def("split_at_threshold", &split_at_threshold, py::arg("sequence"),
        py::arg("k"), py::arg("r"), py::arg("N"));

  py::class_<BlockInfo>(m, "BlockInfo")
      .def_readonly("R", &BlockInfo::R)
      .def_readonly("interval_lo", &BlockInfo::interval_lo)
      .def_readonly("interval_hi", &BlockInfo::interval_hi)
      .def_readonly("count", &BlockInfo::count)
      .def_readonly("skipped", &BlockInfo::skipped);
  py::class_<BlockSequence>(m, "BlockSequence")
      .def_readonly("sequence", &BlockSequence::sequence)
      .def_readonly("blocks", &BlockSequence::blocks);
  py::class_<WeakLrReport>(m, "WeakLrReport")
      .def_readonly("quasinorm", &WeakLrReport::quasinorm)
      .def_readonly("witness_b", &WeakLrReport::witness_b)
      .def_readonly("witness_index", &WeakLrReport::witness_index)
      .def_readonly("dyadic_sup", &WeakLrReport::dyadic_sup);

  py::class_<FocusingSpec>(m, "FocusingSpec")
      .def(py::init([](int N, double r, double eps, double R,
                       std::optional<double> S, std::optional<double> rho) {
             FocusingSpec spec;
             spec.N = N;
             spec.r = r;
             spec.eps = eps;
             spec.R = R;
             spec.lattice_scale = S;
             spec.freq_cutoff = rho;
             spec.validate();
             return spec;
           }),
           py::arg("N") = 2, py::arg("r") = 0.5, py::arg("eps") = 0.01,
           py::arg("R") = 64.0, py::arg("S") = std::nullopt,
           py::arg("rho") = std::nullopt)
      .def_readonly("N", &FocusingSpec::N)
      .def_readonly("r", &FocusingSpec::r)
      .def_readonly("eps", &FocusingSpec::eps)
      .def_readonly("R", &FocusingSpec::R)
      .def("beta", &FocusingSpec::beta)
      .def("lattice_S", &FocusingSpec::lattice_S)
      .def("cutoff_rho", &FocusingSpec::cutoff_rho);

  py::class_<FocusingDatum>(m, "FocusingDatum")
      .def_readonly("f1", &FocusingDatum::f1)
      .def_readonly("f2", &FocusingDatum::f2)
      .def_readonly("field", &FocusingDatum::field)
      .def_readonly("omega1_measure", &FocusingDatum::omega1_measure)
      .def_readonly("omega2_measure", &FocusingDatum::omega2_measure)
      .def_readonly("omega2_centers", &FocusingDatum::omega2_centers);
  m.def(
      "build_focusing",
      [](const FocusingSpec& spec) { return build_focusing(spec); },
      py::arg("spec"));
  m.def("focusing_time_sequence", &focusing_time_sequence);
  py::class_<ResonanceReport>(m, "ResonanceReport")
      .def_readonly("min_ratio", &ResonanceReport::min_ratio)
      .def_readonly("pass_", &ResonanceReport::pass);
  m.def("verify_resonance", &verify_resonance, py::arg("spec"),
        py::arg("datum"), py::arg("j_index"), py::arg("time_offset") = 0.0);
  py::class_<F1FocusReport>(m, "F1FocusReport")
      .def_readonly("t_index", &F1FocusReport::t_index)
      .def_readonly("ratio", &F1FocusReport::ratio)
      .def_readonly("pass_", &F1FocusReport::pass);
  m.def("verify_f1_focusing", &verify_f1_focusing, py::arg("spec"),
        py::arg("datum"), py::arg("x1"));
  py::class_<FocusingBounds>(m, "FocusingBounds")
      .def_readonly("lower", &FocusingBounds::lower)
      .def_readonly("upper", &FocusingBounds::upper)
      .def_readonly("lower_exponent", &FocusingBounds::lower_exponent)
      .def_readonly("upper_exponent", &FocusingBounds::upper_exponent);
  m.def("predicted_focusing_bounds", &predicted_focusing_bounds,
        py::arg("spec"), py::arg("s"));

  py::class_<NonellipticSpec>(m, "NonellipticSpec")
      .def(py::init([](double r, double eps, double b, double M) {
             NonellipticSpec spec{r, eps, b, M};
             spec.validate();
             return spec;
           }),
           py::arg("r") = 0.5, py::arg("eps") = 0.1, py::arg("b") = 1.0 / 256,
           py::arg("M") = 4.0)
      .def_readonly("r", &NonellipticSpec::r)
      .def_readonly("eps", &NonellipticSpec::eps)
      .def_readonly("b", &NonellipticSpec::b)
      .def_readonly("M", &NonellipticSpec::M)
      .def("lambda_", &NonellipticSpec::lambda);
  py::class_<NonellipticDatum>(m, "NonellipticDatum")
      .def_readonly("N", &NonellipticDatum::N)
      .def_readonly("field", &NonellipticDatum::field)
      .def_readonly("box_U", &NonellipticDatum::box_U)
      .def_readonly("times", &NonellipticDatum::times);
  m.def("build_nonelliptic", &build_nonelliptic, py::arg("spec"), py::arg("N"),
        py::arg("points_per_axis") = 48);
  py::class_<NonellipticReport>(m, "NonellipticReport")
      .def_readonly("fraction", &NonellipticReport::fraction)
      .def_readonly("min_sup", &NonellipticReport::min_sup)
      .def_readonly("sups", &NonellipticReport::sups)
      .def_readonly("pass_", &NonellipticReport::pass);
  m.def("verify_nonelliptic", &verify_nonelliptic, py::arg("datum"),
        py::arg("sample_count"), py::arg("seed"));
  m.def("nonelliptic_ratio", &nonelliptic_ratio, py::arg("datum"),
        py::arg("s"), py::arg("nx1") = 400, py::arg("nx2") = 65,
        py::arg("nx3") = 25);

  py::class_<PacketLattice>(m, "PacketLattice")
      .def_readonly("dim", &PacketLattice::dim)
      .def_readonly("k", &PacketLattice::k)
      .def_readonly("j", &PacketLattice::j)
      .def_readonly("period", &PacketLattice::period)
      .def_readonly("theta_centers", &PacketLattice::theta_centers)
      .def("side", &PacketLattice::side)
      .def("spacing", &PacketLattice::spacing)
      .def("grid_step", &PacketLattice::grid_step)
      .def("tube_radius", &PacketLattice::tube_radius)
      .def("far_threshold", &PacketLattice::far_threshold)
      .def("nu_center", [](const PacketLattice& lat, std::vector<int> n) {
        return lat.nu_center(n);
      });
  m.def("make_packet_lattice", &make_packet_lattice, py::arg("dim"),
        py::arg("k"), py::arg("j"), py::arg("period"),
        py::arg("delta") = 1.25e-4);
  m.def("window_profile", &window_profile);
  m.def("packet_window", [](const PacketLattice& lat, std::size_t ti,
                            std::vector<double> xi) {
    return packet_window(lat, ti, xi);
  });
  py::class_<PacketCoefficients>(m, "PacketCoefficients")
      .def_readonly("source_norm", &PacketCoefficients::source_norm)
      .def("energy", &PacketCoefficients::energy)
      .def("coefficient",
           [](const PacketCoefficients& c, std::size_t ti, std::vector<int> n) {
             return c.coefficient(ti, n);
           })
      .def_property_readonly("theta_indices", [](const PacketCoefficients& c) {
        std::vector<std::size_t> out;
        for (const auto& b : c.blocks) out.push_back(b.theta_index);
        return out;
      });
  m.def("decompose", &decompose, py::arg("field"), py::arg("lattice"));
  m.def("reconstruct", &reconstruct);
  m.def(
      "packet_field",
      [](const PacketLattice& lat, std::size_t ti, std::vector<int> n,
         int ppa) { return packet_field(lat, ti, n, ppa); },
      py::arg("lattice"), py::arg("theta_index"), py::arg("n"),
      py::arg("points_per_axis") = 32);
  py::class_<FarFieldReport>(m, "FarFieldReport")
      .def_readonly("ratio", &FarFieldReport::ratio)
      .def_readonly("far_count", &FarFieldReport::far_count)
      .def_readonly("pass_", &FarFieldReport::pass);
  m.def(
      "far_field_negligible",
      [](const PacketCoefficients& coeffs, std::vector<double> nu_prime,
         double multiplier) {
        return far_field_negligible(coeffs, nu_prime, multiplier);
      },
      py::arg("coefficients"), py::arg("nu_prime"), py::arg("multiplier"));

  py::enum_<ThresholdFamily>(m, "ThresholdFamily")
      .value("Schrodinger", ThresholdFamily::Schrodinger)
      .value("Fractional", ThresholdFamily::Fractional)
      .value("Nonelliptic", ThresholdFamily::Nonelliptic);
  m.def(
      "threshold_s0",
      [](ThresholdFamily family, int N, double r, double a) {
        return threshold_s0({family, N, r, a});
      },
      py::arg("family"), py::arg("N") = 2,
      py::arg("r") = std::numeric_limits<double>::infinity(),
      py::arg("a") = 2.0);
  m.def("threshold_inverse_r", &threshold_inverse_r, py::arg("s"));

  py::class_<SpatialGrid>(m, "SpatialGrid")
      .def(py::init<std::vector<double>, double, std::vector<double>>(),
           py::arg("center"), py::arg("half_width"), py::arg("step"))
      .def_readonly("center", &SpatialGrid::center)
      .def_readonly("half_width", &SpatialGrid::half_width)
      .def_readonly("step", &SpatialGrid::step)
      .def("total_count", &SpatialGrid::total_count);
  py::class_<MaximalProfile>(m, "MaximalProfile")
      .def_readonly("sup_values", &MaximalProfile::sup_values)
      .def_readonly("argmax_time_index", &MaximalProfile::argmax_time_index)
      .def_readonly("times", &MaximalProfile::times);
  m.def(
      "maximal_profile",
      [](const SpectralField& f, std::vector<double> times,
         const SymbolKind& kind, const SpatialGrid& grid) {
        return maximal_profile(f, times, kind, grid);
      },
      py::arg("field"), py::arg("times"), py::arg("kind"), py::arg("grid"));
  m.def("maximal_profile_interval", &maximal_profile_interval,
        py::arg("field"), py::arg("t0"), py::arg("t1"), py::arg("step"),
        py::arg("kind"), py::arg("grid"));
  m.def("max_interval_step", &max_interval_step, py::arg("field"),
        py::arg("kind"));
  m.def("default_profile_grid", &default_profile_grid, py::arg("field"),
        py::arg("half_width") = 1.0);
  m.def(
      "ball_l2",
      [](const MaximalProfile& prof, std::vector<double> center,
         double radius) { return ball_l2(prof, center, radius); },
      py::arg("profile"), py::arg("center"), py::arg("radius"));
  m.def(
      "fit_power_law",
      [](std::vector<std::pair<double, double>> rows) {
        return fit_power_law(rows);
      },
      py::arg("rows"));
  m.def("focusing_sweep_ratio", &focusing_sweep_ratio, py::arg("spec"),
        py::arg("s"), py::arg("nx1") = 300);
  m.def("interval_sup_experiment", &interval_sup_experiment, py::arg("lambda_"),
        py::arg("interval_length"), py::arg("kind"),
        py::arg("points_per_axis") = 48);
}

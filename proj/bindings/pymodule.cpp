// Python bindings for the core operations: packet construction, exact
// evolution, observables, entanglement measures, the numeric cross-check,
// and the scenario runner.

#include "lambdacav/atoms.hpp"
#include "lambdacav/entanglement.hpp"
#include "lambdacav/initial_state.hpp"
#include "lambdacav/observables.hpp"
#include "lambdacav/oracle.hpp"
#include "lambdacav/propagator.hpp"
#include "lambdacav/scenario.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace lambdacav;

namespace {

std::vector<std::vector<cplx>> matrix_to_nested(const CMatrix& m) {
    std::vector<std::vector<cplx>> out(m.rows(), std::vector<cplx>(m.cols()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out[static_cast<size_t>(i)][static_cast<size_t>(j)] = m(i, j);
    return out;
}

PacketState make_packet(double nbar1, double nbar2, const std::array<double, 3>& zetas,
                        const std::array<double, 3>& thetas, double phase1, double phase2,
                        double tail_tol) {
    const auto field = FieldAmplitudes::from_mean_and_phase(nbar1, phase1, nbar2, phase2);
    return build_packet(field, normalize_gamma(zetas, thetas), tail_tol);
}

CouplingConfig make_coupling_py(const AtomSpec& atom, double intensity_ratio_1,
                                double intensity_ratio_2, double detuning_multiple,
                                double delta23_multiple) {
    const double mu13 = rabi_from_intensity(atom.gamma_bar, intensity_ratio_1);
    const double mu23 = rabi_from_intensity(atom.gamma_bar, intensity_ratio_2);
    const double d13 = detuning_from_multiple(atom.gamma_bar, detuning_multiple);
    const double d23 = detuning_from_multiple(atom.gamma_bar, delta23_multiple);
    return make_coupling(atom, mu13, mu23, d13, d23);
}

py::dict comparison_to_dict(const OracleComparison& c) {
    py::dict d;
    d["analytic_compared"] = c.analytic_compared;
    d["max_block_deviation"] = c.max_block_deviation;
    d["max_state_distance"] = c.max_state_distance;
    d["max_norm_drift"] = c.max_norm_drift;
    d["max_m1_drift"] = c.max_m1_drift;
    d["max_m2_drift"] = c.max_m2_drift;
    d["max_energy_drift"] = c.max_energy_drift;
    d["lattice_m0"] = c.lattice_m0;
    d["times"] = c.times;
    return d;
}

} // namespace

PYBIND11_MODULE(_lambdacav, m) {
    m.doc() = "Exact dynamics of a three-level Lambda atom in a two-mode cavity";

    py::register_exception<ConfigError>(m, "ConfigError");

    py::class_<AtomSpec>(m, "AtomSpec")
        .def_readonly("label", &AtomSpec::label)
        .def_readonly("omega1", &AtomSpec::omega1)
        .def_readonly("omega2", &AtomSpec::omega2)
        .def_readonly("omega3", &AtomSpec::omega3)
        .def_readonly("gamma_bar", &AtomSpec::gamma_bar)
        .def_readonly("time_unit_ns", &AtomSpec::time_unit_ns)
        .def("__repr__", [](const AtomSpec& a) { return "<AtomSpec " + a.label + ">"; });

    py::class_<CouplingConfig>(m, "CouplingConfig")
        .def_readonly("mu13", &CouplingConfig::mu13)
        .def_readonly("mu23", &CouplingConfig::mu23)
        .def_readonly("delta13", &CouplingConfig::delta13)
        .def_readonly("delta23", &CouplingConfig::delta23)
        .def_readonly("omega_field1", &CouplingConfig::omega_field1)
        .def_readonly("omega_field2", &CouplingConfig::omega_field2)
        .def("equal_detuning", &CouplingConfig::equal_detuning);

    py::class_<PacketState>(m, "PacketState")
        .def_property_readonly("time", [](const PacketState& p) { return p.time; })
        .def_property_readonly("tail_mass", [](const PacketState& p) { return p.tail_mass; })
        .def_property_readonly("m0", [](const PacketState& p) { return p.lattice->M0(); })
        .def_property_readonly("total_dim",
                               [](const PacketState& p) { return p.lattice->total_dim(); })
        .def("norm2", &PacketState::norm2)
        .def("fock_amplitude", &PacketState::fock_amplitude, py::arg("n1"), py::arg("n2"),
             py::arg("k"), "Amplitude on |n1, n2> x |k> in the physical product basis.");

    py::class_<Evolver>(m, "Evolver")
        .def(py::init([](const PacketState& p, const CouplingConfig& c, const AtomSpec& a) {
                 return Evolver(p.lattice, c, a);
             }),
             py::arg("packet"), py::arg("coupling"), py::arg("atom"),
             "Precomputes the closed-form block propagator data for the packet's lattice; "
             "requires equal detunings.")
        .def("evolve", &Evolver::evolve, py::arg("packet"), py::arg("dt"),
             "Evolve the packet forward by dt (exact, per conserved-excitation block).");

    m.def("atom", &builtin_atom, py::arg("name"), "Builtin atom: 'li6' or 'rb87'.");
    m.def("coupling", &make_coupling_py, py::arg("atom"), py::arg("intensity_ratio_1"),
          py::arg("intensity_ratio_2"), py::arg("detuning_multiple") = 0.0,
          py::arg("delta23_multiple") = 0.0,
          "Couplings from saturation intensity ratios and linewidth multiples.");
    m.def("packet", &make_packet, py::arg("nbar1"), py::arg("nbar2"), py::arg("zetas"),
          py::arg("thetas") = std::array<double, 3>{0.0, 0.0, 0.0}, py::arg("phase1") = 0.0,
          py::arg("phase2") = 0.0, py::arg("tail_tol") = 1e-12,
          "Coherent-state x atomic-superposition packet, Poisson tails truncated at tail_tol.");

    m.def(
        "level_populations",
        [](const PacketState& p) {
            const auto rho = atomic_rdm(p);
            return std::array<double, 3>{rho.p(1), rho.p(2), rho.p(3)};
        },
        py::arg("packet"), "Occupation probabilities of the three atomic levels.");
    m.def(
        "atomic_rdm", [](const PacketState& p) { return matrix_to_nested(atomic_rdm(p).rho); },
        py::arg("packet"), "3x3 atomic reduced density matrix (nested lists of complex).");
    m.def(
        "mode_density",
        [](const PacketState& p, int mode) { return matrix_to_nested(mode_density(p, mode)); },
        py::arg("packet"), py::arg("mode"), "Single-mode reduced density matrix.");
    m.def("photon_marginal", &photon_marginal, py::arg("packet"), py::arg("mode"),
          "Photon-number distribution of one mode.");
    m.def("mandel_q", py::overload_cast<const std::vector<double>&>(&mandel_q),
          py::arg("photon_distribution"),
          "Mandel Q of a photon-number distribution (0 for Poissonian).");
    m.def(
        "phase_area", [](const PacketState& p, int mode) { return phase_area(mode_density(p, mode)); },
        py::arg("packet"), py::arg("mode"),
        "Phase-space area occupied by one mode (1 for any coherent state).");
    m.def(
        "atom_linear_entropy",
        [](const PacketState& p) { return linear_entropy(atomic_rdm(p).rho); }, py::arg("packet"),
        "Linear entropy 1 - Tr rho^2 of the atomic state.");
    m.def(
        "atom_entropy", [](const PacketState& p) { return von_neumann_entropy(atomic_rdm(p).rho); },
        py::arg("packet"), "Von Neumann entropy (natural log) of the atomic state.");
    m.def(
        "mode_entropy",
        [](const PacketState& p, int mode) { return von_neumann_entropy(mode_density(p, mode)); },
        py::arg("packet"), py::arg("mode"), "Von Neumann entropy of one mode.");
    m.def(
        "conserved",
        [](const PacketState& p, const CouplingConfig& c, const AtomSpec& a) {
            const auto e = conserved_expectations(p, c, a);
            py::dict d;
            d["energy"] = e.energy;
            d["m1"] = e.m1;
            d["m2"] = e.m2;
            return d;
        },
        py::arg("packet"), py::arg("coupling"), py::arg("atom"),
        "Expectation values of the three conserved quantities.");
    m.def(
        "oracle_compare",
        [](double nbar1, double nbar2, const std::array<double, 3>& zetas,
           const std::array<double, 3>& thetas, const CouplingConfig& coupling,
           const AtomSpec& atom, const std::vector<double>& times, double tail_tol) {
            const auto field = FieldAmplitudes::from_mean_and_phase(nbar1, 0.0, nbar2, 0.0);
            return comparison_to_dict(
                compare_evolutions(field, normalize_gamma(zetas, thetas), coupling, atom, times,
                                   tail_tol));
        },
        py::arg("nbar1"), py::arg("nbar2"), py::arg("zetas"), py::arg("thetas"),
        py::arg("coupling"), py::arg("atom"), py::arg("times"), py::arg("tail_tol") = 1e-10,
        "Closed-form vs numeric-diagonalization evolution comparison.");

    m.def("preset_names", &preset_names, "Builtin scenario preset names.");
    m.def(
        "run",
        [](const std::string& scenario, const std::string& out_dir, bool oracle, bool emit_ns,
           const std::vector<double>& snapshots, bool override_snapshots, int threads) {
            const ScenarioConfig config =
                is_preset_name(scenario) ? resolve_preset(scenario) : parse_config(scenario);
            RunOptions options;
            options.out_dir = out_dir;
            options.oracle = oracle;
            options.emit_ns = emit_ns;
            options.has_snapshot_override = override_snapshots;
            options.snapshot_override = snapshots;
            options.threads = threads;
            const RunResult result = run_scenario(config, options);
            py::dict d;
            d["exit_code"] = result.exit_code;
            d["message"] = result.message;
            d["oracle_report_json"] = result.oracle_report_json;
            return d;
        },
        py::arg("scenario"), py::arg("out_dir"), py::arg("oracle") = false,
        py::arg("emit_ns") = false, py::arg("snapshots") = std::vector<double>{},
        py::arg("override_snapshots") = false, py::arg("threads") = 0,
        "Run a preset name or JSON text scenario; writes observables.csv and manifest.json.");
    m.def("csv_columns", [] { return csv_columns(); }, "observables.csv column names.");
}

#include "lambdacav/scenario.hpp"

#include "lambdacav/entanglement.hpp"
#include "lambdacav/initial_state.hpp"
#include "lambdacav/observables.hpp"
#include "lambdacav/oracle.hpp"
#include "lambdacav/propagator.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <thread>

namespace lambdacav {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------- parsing --

struct ErrorList {
    std::vector<std::string> errors;

    void add(const std::string& e) { errors.push_back(e); }
    void raise_if_any() const {
        if (errors.empty()) return;
        std::string msg = "configuration invalid:";
        for (const auto& e : errors) msg += "\n  - " + e;
        throw ConfigError(msg);
    }
};

double require_number(const json& j, const std::string& key, ErrorList& errs,
                      double fallback = 0.0) {
    if (!j.contains(key)) {
        errs.add("missing key \"" + key + "\"");
        return fallback;
    }
    if (!j[key].is_number()) {
        errs.add("key \"" + key + "\" must be a number");
        return fallback;
    }
    return j[key].get<double>();
}

double optional_number(const json& j, const std::string& key, double fallback,
                       ErrorList& errs) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) {
        errs.add("key \"" + key + "\" must be a number");
        return fallback;
    }
    return j[key].get<double>();
}

std::array<double, 3> triple(const json& j, const std::string& key, bool required,
                             std::array<double, 3> fallback, ErrorList& errs) {
    if (!j.contains(key)) {
        if (required) errs.add("missing key \"" + key + "\"");
        return fallback;
    }
    const json& v = j[key];
    if (!v.is_array() || v.size() != 3 ||
        !std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_number(); })) {
        errs.add("key \"" + key + "\" must be an array of 3 numbers");
        return fallback;
    }
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = {
        "atom",         "intensity_ratio_1", "intensity_ratio_2",
        "nbar1",        "nbar2",             "phase1",
        "phase2",       "zetas",             "thetas",
        "detuning_multiple",                 "delta23_multiple",
        "tail_tol",     "t_start",           "t_end",
        "steps",        "snapshots",         "husimi_half_width",
        "husimi_step"};
    return keys;
}

AtomSpec parse_atom(const json& j, ErrorList& errs) {
    AtomSpec fallback = builtin_atom("li6");
    if (!j.contains("atom")) {
        errs.add("missing key \"atom\" (builtin name or inline object)");
        return fallback;
    }
    const json& a = j["atom"];
    if (a.is_string()) {
        try {
            return builtin_atom(a.get<std::string>());
        } catch (const std::exception& e) {
            errs.add(std::string("atom: ") + e.what());
            return fallback;
        }
    }
    if (!a.is_object()) {
        errs.add("key \"atom\" must be a builtin name or an object");
        return fallback;
    }
    static const std::vector<std::string> atom_keys = {"label",     "omega1", "omega2",
                                                       "omega3",    "gamma_bar",
                                                       "time_unit_ns"};
    for (auto it = a.begin(); it != a.end(); ++it)
        if (std::find(atom_keys.begin(), atom_keys.end(), it.key()) == atom_keys.end())
            errs.add("atom: unknown key \"" + it.key() + "\"");
    AtomSpec spec;
    if (!a.contains("label") || !a["label"].is_string())
        errs.add("atom: missing or non-string \"label\"");
    else
        spec.label = a["label"].get<std::string>();
    spec.omega1 = require_number(a, "omega1", errs);
    spec.omega2 = require_number(a, "omega2", errs);
    spec.omega3 = optional_number(a, "omega3", 1.0, errs);
    spec.gamma_bar = require_number(a, "gamma_bar", errs);
    spec.time_unit_ns = require_number(a, "time_unit_ns", errs);
    if (!errs.errors.empty()) return spec;
    try {
        return validate_atom(spec);
    } catch (const std::exception& e) {
        errs.add(std::string("atom: ") + e.what());
        return spec;
    }
}

void validate_scenario(const ScenarioConfig& c, ErrorList& errs) {
    if (c.intensity_ratio_1 < 0.0) errs.add("intensity_ratio_1 must be >= 0");
    if (c.intensity_ratio_2 < 0.0) errs.add("intensity_ratio_2 must be >= 0");
    if (c.nbar1 < 0.0) errs.add("nbar1 must be >= 0");
    if (c.nbar2 < 0.0) errs.add("nbar2 must be >= 0");
    if (!(c.tail_tol > 0.0 && c.tail_tol < 1.0)) errs.add("tail_tol must lie in (0, 1)");
    if (c.grid.steps < 1) errs.add("steps must be >= 1");
    if (c.grid.t_end < c.grid.t_start) errs.add("t_end must be >= t_start");
    if (c.husimi_half_width < 0.0) errs.add("husimi_half_width must be >= 0 (0 = auto)");
    if (!(c.husimi_step > 0.0)) errs.add("husimi_step must be > 0");
    bool any = false;
    for (double z : c.zetas) {
        if (z < 0.0) errs.add("zetas entries must be >= 0");
        if (z > 0.0) any = true;
    }
    if (!any) errs.add("zetas must not all vanish");
}

// ---------------------------------------------------------------- presets --

ScenarioConfig base_preset(const std::string& atom_name, const std::string& base) {
    ScenarioConfig c;
    c.atom = builtin_atom(atom_name);
    c.intensity_ratio_1 = 3.0;
    c.intensity_ratio_2 = 3.0;
    c.nbar1 = 3.0;
    c.nbar2 = 3.0;
    if (base == "state1") {
        c.zetas = {1.0, 0.0, 0.0};
    } else if (base == "state2") {
        c.zetas = {0.0, 1.0, 0.0};
        c.detuning_multiple = 5.0;
    } else if (base == "state3") {
        c.zetas = {0.0, 0.0, 1.0};
    } else if (base == "state4") {
        c.zetas = {1.0, 1.0, 1.0};
    } else if (base == "raman1") {
        c.intensity_ratio_1 = 5.0;
        c.intensity_ratio_2 = 0.25;
        c.nbar1 = 3.0;
        c.nbar2 = 1.0;
        c.zetas = {0.0, 0.0, 1.0};
    } else if (base == "raman2") {
        c.intensity_ratio_1 = 1.0;
        c.intensity_ratio_2 = 1.0;
        c.detuning_multiple = 10.0;
        c.zetas = {1.0, 0.0, 0.0};
    } else {
        throw ConfigError("unknown preset base \"" + base + "\"");
    }
    c.delta23_multiple = c.detuning_multiple;
    return c;
}

} // namespace

CouplingConfig ScenarioConfig::coupling() const {
    const double mu13 = rabi_from_intensity(atom.gamma_bar, intensity_ratio_1);
    const double mu23 = rabi_from_intensity(atom.gamma_bar, intensity_ratio_2);
    const double d13 = detuning_from_multiple(atom.gamma_bar, detuning_multiple);
    const double d23 = detuning_from_multiple(atom.gamma_bar, delta23_multiple);
    return make_coupling(atom, mu13, mu23, d13, d23);
}

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const char* a : {"li6", "rb87"})
        for (const char* b : {"state1", "state2", "state3", "state4", "raman1", "raman2"})
            names.push_back(std::string(a) + "/" + b);
    return names;
}

bool is_preset_name(const std::string& name) {
    const auto names = preset_names();
    if (std::find(names.begin(), names.end(), name) != names.end()) return true;
    for (const char* b : {"state1", "state2", "state3", "state4", "raman1", "raman2"})
        if (name == b) return true;
    return false;
}

ScenarioConfig resolve_preset(const std::string& name) {
    std::string atom_name = "li6", base = name;
    const auto slash = name.find('/');
    if (slash != std::string::npos) {
        atom_name = name.substr(0, slash);
        base = name.substr(slash + 1);
    }
    if (atom_name != "li6" && atom_name != "rb87")
        throw ConfigError("unknown preset \"" + name + "\" (run with --list-presets)");
    ScenarioConfig c = base_preset(atom_name, base);
    c.preset = atom_name + "/" + base;
    return c;
}

ScenarioConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("configuration is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("configuration root must be a JSON object");

    ErrorList errs;
    const auto& keys = known_keys();
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(keys.begin(), keys.end(), it.key()) == keys.end())
            errs.add("unknown key \"" + it.key() + "\"");

    ScenarioConfig c;
    c.atom = parse_atom(j, errs);
    c.intensity_ratio_1 = require_number(j, "intensity_ratio_1", errs);
    c.intensity_ratio_2 = require_number(j, "intensity_ratio_2", errs);
    c.nbar1 = require_number(j, "nbar1", errs);
    c.nbar2 = require_number(j, "nbar2", errs);
    c.phase1 = optional_number(j, "phase1", 0.0, errs);
    c.phase2 = optional_number(j, "phase2", 0.0, errs);
    c.zetas = triple(j, "zetas", true, {1.0, 0.0, 0.0}, errs);
    c.thetas = triple(j, "thetas", false, {0.0, 0.0, 0.0}, errs);
    c.detuning_multiple = optional_number(j, "detuning_multiple", 0.0, errs);
    c.delta23_multiple = optional_number(j, "delta23_multiple", c.detuning_multiple, errs);
    c.tail_tol = optional_number(j, "tail_tol", 1e-12, errs);
    c.grid.t_start = optional_number(j, "t_start", 0.0, errs);
    c.grid.t_end = optional_number(j, "t_end", 500.0, errs);
    if (j.contains("steps")) {
        if (!j["steps"].is_number_integer())
            errs.add("key \"steps\" must be an integer");
        else
            c.grid.steps = j["steps"].get<int>();
    }
    if (j.contains("snapshots")) {
        const json& s = j["snapshots"];
        if (!s.is_array() ||
            !std::all_of(s.begin(), s.end(), [](const json& x) { return x.is_number(); }))
            errs.add("key \"snapshots\" must be an array of numbers");
        else
            for (const json& x : s) c.snapshots.push_back(x.get<double>());
    }
    c.husimi_half_width = optional_number(j, "husimi_half_width", 0.0, errs);
    c.husimi_step = optional_number(j, "husimi_step", 0.05, errs);

    validate_scenario(c, errs);
    errs.raise_if_any();
    return c;
}

const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> cols = {
        "t",      "P1",    "P2",       "P3",       "varP1",        "varP2",
        "varP3",  "C_coh", "|chi12|",  "|chi13|",  "|chi23|",      "QM1",
        "QM2",    "area1", "area2",    "SL_atom",  "SVN_atom",     "MI_atom_field",
        "MI_modes", "autocorr", "Pd1_total", "Pd2_total", "M1_exp", "M2_exp",
        "E_exp"};
    return cols;
}

namespace {

// ------------------------------------------------------------- evolution --

// Numeric fallback evolution for unequal detunings: per-block spectral data
// from the brute-force Hamiltonian assembly.
class NumericEvolver {
public:
    NumericEvolver(std::shared_ptr<const Lattice> lattice, const CouplingConfig& coupling,
                   const AtomSpec& atom)
        : lattice_(std::move(lattice)) {
        const auto& blocks = lattice_->blocks();
        data_.reserve(blocks.size());
        for (const Block& b : blocks) {
            const DenseBlockHamiltonian h = assemble_block({b.m1, b.m2}, coupling, atom);
            BlockData d;
            if (h.dim == 1) {
                d.scalar = true;
                d.lambda[0] = h.h[0][0];
            } else {
                CMatrix hm(3, 3);
                for (int i = 0; i < 3; ++i)
                    for (int jj = 0; jj < 3; ++jj) hm(i, jj) = h.h[i][jj];
                EigenSystem es = hermitian_eigensystem(hm);
                for (int i = 0; i < 3; ++i) d.lambda[i] = es.eigenvalues[i];
                d.vectors = std::move(es.vectors);
            }
            data_.push_back(std::move(d));
        }
    }

    PacketState evolve(const PacketState& psi0, double t) const {
        PacketState out;
        out.lattice = psi0.lattice;
        out.amps.resize(psi0.amps.size());
        out.tail_mass = psi0.tail_mass;
        out.time = psi0.time + t;
        const auto& blocks = lattice_->blocks();
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            const Block& b = blocks[i];
            const BlockData& d = data_[i];
            if (d.scalar) {
                out.amps[b.offset] = psi0.amps[b.offset] * std::polar(1.0, -d.lambda[0] * t);
                continue;
            }
            cplx proj[3];
            for (int k = 0; k < 3; ++k) {
                cplx s = 0.0;
                for (int r = 0; r < 3; ++r)
                    s += std::conj(d.vectors(r, k)) * psi0.amps[b.offset + r];
                proj[k] = s * std::polar(1.0, -d.lambda[k] * t);
            }
            for (int r = 0; r < 3; ++r) {
                cplx s = 0.0;
                for (int k = 0; k < 3; ++k) s += d.vectors(r, k) * proj[k];
                out.amps[b.offset + r] = s;
            }
        }
        return out;
    }

private:
    struct BlockData {
        bool scalar = false;
        double lambda[3] = {0.0, 0.0, 0.0};
        CMatrix vectors;
    };
    std::shared_ptr<const Lattice> lattice_;
    std::vector<BlockData> data_;
};

struct Row {
    double t = 0.0;
    std::vector<double> values;   // csv_columns() order, t excluded
};

Row compute_row(const PacketState& psi0, const PacketState& psi_t,
                const CouplingConfig& coupling, const AtomSpec& atom) {
    Row row;
    row.t = psi_t.time;

    const AtomicDensity rA = atomic_rdm(psi_t);
    const double p1 = rA.p(1), p2 = rA.p(2), p3 = rA.p(3);
    const double svn_atom = von_neumann_entropy(rA.rho);

    const CMatrix rho1 = mode_density(psi_t, 1);
    const CMatrix rho2 = mode_density(psi_t, 2);
    const double svn1 = von_neumann_entropy(rho1);
    const double svn2 = von_neumann_entropy(rho2);

    auto safe_mandel = [](const CMatrix& rho) {
        try {
            return mandel_q(rho);
        } catch (const std::domain_error&) {
            return std::nan("");
        }
    };

    const DarkStateProbabilities dark = dark_state_probabilities(psi_t);
    const ConservedExpectations ce = conserved_expectations(psi_t, coupling, atom);

    row.values = {
        p1,
        p2,
        p3,
        occupation_fluctuation(p1),
        occupation_fluctuation(p2),
        occupation_fluctuation(p3),
        coherence(rA),
        std::abs(rA.chi(1, 2)),
        std::abs(rA.chi(1, 3)),
        std::abs(rA.chi(2, 3)),
        safe_mandel(rho1),
        safe_mandel(rho2),
        phase_area(rho1),
        phase_area(rho2),
        linear_entropy(rA.rho),
        svn_atom,
        // the joint state is pure, so S(field) = S(atom) and I = 2 S(atom)
        2.0 * svn_atom,
        svn1 + svn2 - svn_atom,
        autocorrelation(psi0, psi_t),
        dark.total1,
        dark.total2,
        ce.m1,
        ce.m2,
        ce.energy,
    };
    return row;
}

std::string snapshot_tag(double t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", t);
    std::string s = buf;
    for (char& ch : s) {
        if (ch == '.') ch = 'p';
        if (ch == '-') ch = 'm';
    }
    return s;
}

json density_to_json(const CMatrix& m, const char* row_label, const char* col_label) {
    json entries = json::array();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            const cplx v = m(i, j);
            if (std::abs(v) < 1e-16) continue;
            entries.push_back(
                {{row_label, i}, {col_label, j}, {"re", v.real()}, {"im", v.imag()}});
        }
    return json{{"dim", m.rows()}, {"entries", entries}};
}

void write_snapshots(const ScenarioConfig& config, const std::filesystem::path& dir,
                     const std::vector<double>& times,
                     const std::function<PacketState(double)>& evolve_at) {
    const double auto_hw = std::sqrt(std::max(config.nbar1, config.nbar2)) + 4.0;
    const double hw = config.husimi_half_width > 0.0 ? config.husimi_half_width : auto_hw;
    for (double t : times) {
        const PacketState psi = evolve_at(t);
        const std::string tag = snapshot_tag(t);

        const AtomicDensity rA = atomic_rdm(psi);
        json atom_snap = {{"t", t},
                          {"matrix", density_to_json(rA.rho, "row", "col")},
                          {"basis", "atomic levels 1..3 (indices 0..2)"}};
        std::ofstream(dir / ("snapshot_" + tag + "_atom.json")) << atom_snap.dump(1) << "\n";

        for (int mode = 1; mode <= 2; ++mode) {
            const CMatrix rho = mode_density(psi, mode);
            json mode_snap = {{"t", t},
                              {"mode", mode},
                              {"matrix", density_to_json(rho, "n", "m")}};
            std::ofstream(dir / ("snapshot_" + tag + "_mode" + std::to_string(mode) +
                                 ".json"))
                << mode_snap.dump(1) << "\n";

            const PhaseGrid grid = husimi(rho, hw, config.husimi_step);
            std::ofstream hs(dir / ("snapshot_" + tag + "_husimi" +
                                    std::to_string(mode) + ".txt"));
            hs << "# X Y Q (t=" << fmt17(t) << ", mode " << mode << ")\n";
            for (int ix = 0; ix < grid.n; ++ix)
                for (int iy = 0; iy < grid.n; ++iy)
                    hs << fmt17(grid.coord(ix)) << " " << fmt17(grid.coord(iy)) << " "
                       << fmt17(grid.value(ix, iy)) << "\n";
        }
    }
}

} // namespace

RunResult run_scenario(const ScenarioConfig& config, const RunOptions& options) {
    RunResult result;

    ErrorList errs;
    validate_scenario(config, errs);
    try {
        errs.raise_if_any();
    } catch (const ConfigError& e) {
        return {2, e.what(), ""};
    }

    const CouplingConfig coupling = config.coupling();
    const bool equal = coupling.equal_detuning();
    if (!equal && !options.oracle)
        return {2,
                "unequal detunings have no closed-form propagator; re-run with --oracle "
                "to use the numeric path",
                ""};

    if (options.out_dir.empty()) return {2, "output directory not set", ""};
    const std::filesystem::path dir(options.out_dir);
    std::filesystem::create_directories(dir);

    // initial state and evolution engines
    const FieldAmplitudes field = FieldAmplitudes::from_mean_and_phase(
        config.nbar1, config.phase1, config.nbar2, config.phase2);
    const AtomAmplitudes gamma = normalize_gamma(config.zetas, config.thetas);
    const PacketState psi0 = build_packet(field, gamma, config.tail_tol);

    std::optional<Evolver> analytic;
    std::optional<NumericEvolver> numeric;
    if (equal)
        analytic.emplace(psi0.lattice, coupling, config.atom);
    else
        numeric.emplace(psi0.lattice, coupling, config.atom);
    auto evolve_at = [&](double t) {
        return analytic ? analytic->evolve(psi0, t) : numeric->evolve(psi0, t);
    };

    // time sweep through a worker pool; rows are independent
    const TimeGrid& grid = config.grid;
    std::vector<Row> rows(grid.points());
    {
        unsigned n = options.threads > 0 ? options.threads
                                         : std::max(1u, std::thread::hardware_concurrency());
        n = std::min<unsigned>(n, rows.size());
        std::atomic<int> next{0};
        auto worker = [&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= grid.points()) break;
                const PacketState psi_t = evolve_at(grid.at(i));
                rows[i] = compute_row(psi0, psi_t, coupling, config.atom);
            }
        };
        std::vector<std::thread> pool;
        for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
    }

    // observables.csv
    {
        std::ofstream csv(dir / "observables.csv");
        const auto& cols = csv_columns();
        for (std::size_t i = 0; i < cols.size(); ++i) {
            csv << cols[i];
            if (i == 0 && options.emit_ns) csv << ",t_ns";
            if (i + 1 < cols.size()) csv << ",";
        }
        csv << "\n";
        for (const Row& row : rows) {
            csv << fmt17(row.t);
            if (options.emit_ns) csv << "," << fmt17(row.t * config.atom.time_unit_ns);
            for (double v : row.values) csv << "," << fmt17(v);
            csv << "\n";
        }
    }

    // manifest.json
    const int nu1 = truncation_level(config.nbar1, config.tail_tol);
    const int nu2 = truncation_level(config.nbar2, config.tail_tol);
    {
        json manifest = {
            {"preset", config.preset},
            {"atom",
             {{"label", config.atom.label},
              {"omega1", config.atom.omega1},
              {"omega2", config.atom.omega2},
              {"omega3", config.atom.omega3},
              {"gamma_bar", config.atom.gamma_bar},
              {"time_unit_ns", config.atom.time_unit_ns}}},
            {"coupling",
             {{"mu13", coupling.mu13},
              {"mu23", coupling.mu23},
              {"delta13", coupling.delta13},
              {"delta23", coupling.delta23},
              {"omega_field1", coupling.omega_field1},
              {"omega_field2", coupling.omega_field2}}},
            {"field",
             {{"nbar1", config.nbar1},
              {"nbar2", config.nbar2},
              {"phase1", config.phase1},
              {"phase2", config.phase2}}},
            {"gamma",
             {{"zetas", config.zetas},
              {"thetas", config.thetas},
              {"normalized",
               {{gamma.gamma[0].real(), gamma.gamma[0].imag()},
                {gamma.gamma[1].real(), gamma.gamma[1].imag()},
                {gamma.gamma[2].real(), gamma.gamma[2].imag()}}}}},
            {"truncation",
             {{"tail_tol", config.tail_tol},
              {"nu1_max", nu1},
              {"nu2_max", nu2},
              {"M0", psi0.lattice->M0()},
              {"total_dim", psi0.lattice->total_dim()},
              {"tail_mass", psi0.tail_mass}}},
            {"grid",
             {{"t_start", grid.t_start}, {"t_end", grid.t_end}, {"steps", grid.steps}}},
            {"husimi",
             {{"half_width", config.husimi_half_width > 0.0
                                 ? config.husimi_half_width
                                 : std::sqrt(std::max(config.nbar1, config.nbar2)) + 4.0},
              {"step", config.husimi_step}}},
            {"evolution", equal ? "analytic" : "numeric"},
            {"emit_ns", options.emit_ns},
            {"columns", csv_columns()},
        };
        std::ofstream(dir / "manifest.json") << manifest.dump(2) << "\n";
    }

    // snapshots
    const std::vector<double>& snaps =
        options.has_snapshot_override ? options.snapshot_override : config.snapshots;
    if (!snaps.empty()) write_snapshots(config, dir, snaps, evolve_at);

    // oracle comparison
    if (options.oracle) {
        std::vector<double> times;
        const int pts = std::max(2, options.oracle_points);
        for (int i = 0; i < pts; ++i)
            times.push_back(grid.t_start +
                            (grid.t_end - grid.t_start) * (static_cast<double>(i) / (pts - 1)));
        const OracleComparison report =
            compare_evolutions(field, gamma, coupling, config.atom, times, 1e-10);
        result.oracle_report_json = report.to_json();
        std::ofstream(dir / "oracle_report.json") << result.oracle_report_json << "\n";
        if (!report.within(options.oracle_tolerance)) {
            result.exit_code = 3;
            result.message = "oracle comparison beyond tolerance";
            return result;
        }
    }

    result.message = "ok";
    return result;
}

} // namespace lambdacav

#include "lambdacav/oracle.hpp"

#include "lambdacav/propagator.hpp"

#include <cmath>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace lambdacav {

DenseBlockHamiltonian assemble_block(const BlockIndex& b, const CouplingConfig& coupling,
                                     const AtomSpec& atom) {
    if (b.m1 < 0 || b.m2 < 0 || b.m2 > b.m1 + 1)
        throw std::invalid_argument("assemble_block: invalid block indices");
    DenseBlockHamiltonian out;
    out.block = b;
    if (b.m2 == 0) {
        out.dim = 1;
        out.h[0][0] = atom.omega2 + coupling.omega_field1 * b.m1;
        return out;
    }
    if (b.m2 == b.m1 + 1) {
        out.dim = 1;
        out.h[0][0] = atom.omega1 + coupling.omega_field2 * b.m1;
        return out;
    }
    out.dim = 3;
    const double mt = static_cast<double>(b.m1 - b.m2 + 1);
    const double e0 = atom.omega1 + coupling.omega_field1 * mt +
                      coupling.omega_field2 * (b.m2 - 1);
    const double a = coupling.mu13 * std::sqrt(mt);
    const double c = coupling.mu23 * std::sqrt(static_cast<double>(b.m2));
    out.h = {{{e0, 0.0, a},
              {0.0, e0 + coupling.delta13 - coupling.delta23, c},
              {a, c, e0 + coupling.delta13}}};
    return out;
}

CMatrix numeric_propagator(const DenseBlockHamiltonian& h, double t) {
    CMatrix u(h.dim, h.dim);
    if (h.dim == 1) {
        u(0, 0) = std::polar(1.0, -h.h[0][0] * t);
        return u;
    }
    CMatrix hm(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) hm(i, j) = h.h[i][j];
    const EigenSystem es = hermitian_eigensystem(hm);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < 3; ++k)
                s += es.vectors(i, k) * std::polar(1.0, -es.eigenvalues[k] * t) *
                     std::conj(es.vectors(j, k));
            u(i, j) = s;
        }
    return u;
}

PacketState oracle_evolve(const PacketState& packet, const CouplingConfig& coupling,
                          const AtomSpec& atom, double t) {
    PacketState out;
    out.lattice = packet.lattice;
    out.amps.resize(packet.amps.size());
    out.tail_mass = packet.tail_mass;
    out.time = packet.time + t;
    for (const Block& b : packet.lattice->blocks()) {
        const DenseBlockHamiltonian h = assemble_block({b.m1, b.m2}, coupling, atom);
        const CMatrix u = numeric_propagator(h, t);
        if (b.dim == 1) {
            out.amps[b.offset] = u(0, 0) * packet.amps[b.offset];
            continue;
        }
        for (int i = 0; i < 3; ++i) {
            cplx s = 0.0;
            for (int j = 0; j < 3; ++j) s += u(i, j) * packet.amps[b.offset + j];
            out.amps[b.offset + i] = s;
        }
    }
    return out;
}

CMatrix oracle_atomic_rdm(const PacketState& packet) {
    const Lattice& lat = *packet.lattice;
    const int d = lat.M0() + 1;
    // regroup amplitudes by Fock pair; chi_3 slots flip back to the product basis
    std::vector<std::array<cplx, 3>> by_fock(static_cast<size_t>(d) * d);
    for (const Block& b : lat.blocks())
        for (int k = 1; k <= 3; ++k) {
            if (!lat.k_valid(b, k)) continue;
            const FockLabel f = chi_to_fock({b.m1, b.m2}, k);
            cplx v = packet.amps[b.dim == 3 ? b.offset + (k - 1) : b.offset];
            if (k == 3) v = -v;
            by_fock[static_cast<size_t>(f.n1) * d + f.n2][k - 1] = v;
        }
    CMatrix rho(3, 3);
    for (const auto& v : by_fock)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) rho(i, j) += v[i] * std::conj(v[j]);
    return rho;
}

std::string OracleComparison::to_json() const {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "{\n";
    os << "  \"analytic_compared\": " << (analytic_compared ? "true" : "false") << ",\n";
    os << "  \"max_block_deviation\": " << max_block_deviation << ",\n";
    os << "  \"max_state_distance\": " << max_state_distance << ",\n";
    os << "  \"max_norm_drift\": " << max_norm_drift << ",\n";
    os << "  \"max_m1_drift\": " << max_m1_drift << ",\n";
    os << "  \"max_m2_drift\": " << max_m2_drift << ",\n";
    os << "  \"max_energy_drift\": " << max_energy_drift << ",\n";
    os << "  \"lattice_m0\": " << lattice_m0 << ",\n";
    os << "  \"times\": [";
    for (std::size_t i = 0; i < times.size(); ++i)
        os << (i ? ", " : "") << times[i];
    os << "]\n}";
    return os.str();
}

bool OracleComparison::within(double tol) const {
    if (max_norm_drift > tol || max_m1_drift > tol || max_m2_drift > tol ||
        max_energy_drift > tol)
        return false;
    if (analytic_compared &&
        (max_block_deviation > tol || max_state_distance > tol))
        return false;
    return true;
}

OracleComparison compare_evolutions(const FieldAmplitudes& field,
                                    const AtomAmplitudes& atom_amps,
                                    const CouplingConfig& coupling, const AtomSpec& atom,
                                    const std::vector<double>& times, double tail_tol) {
    OracleComparison report;
    report.times = times;
    report.analytic_compared = coupling.equal_detuning();

    const PacketState psi0 = build_packet(field, atom_amps, tail_tol);
    const Lattice& lat = *psi0.lattice;
    report.lattice_m0 = lat.M0();

    // eigendecompose every block once; propagators at each t follow from phases
    std::vector<DenseBlockHamiltonian> hams;
    hams.reserve(lat.blocks().size());
    for (const Block& b : lat.blocks())
        hams.push_back(assemble_block({b.m1, b.m2}, coupling, atom));

    const ConservedExpectations ref = conserved_expectations(psi0, coupling, atom);

    std::optional<Evolver> analytic_evolver;
    if (report.analytic_compared)
        analytic_evolver.emplace(psi0.lattice, coupling, atom);
    Evolver* evolver = analytic_evolver ? &*analytic_evolver : nullptr;

    for (double t : times) {
        PacketState numeric;
        numeric.lattice = psi0.lattice;
        numeric.amps.resize(psi0.amps.size());
        numeric.tail_mass = psi0.tail_mass;
        numeric.time = t;

        double block_dev = 0.0;
        const PacketState analytic =
            evolver ? evolver->evolve(psi0, t) : PacketState{};

        for (std::size_t i = 0; i < lat.blocks().size(); ++i) {
            const Block& b = lat.blocks()[i];
            const CMatrix u = numeric_propagator(hams[i], t);
            if (b.dim == 1) {
                numeric.amps[b.offset] = u(0, 0) * psi0.amps[b.offset];
            } else {
                for (int r = 0; r < 3; ++r) {
                    cplx s = 0.0;
                    for (int cidx = 0; cidx < 3; ++cidx)
                        s += u(r, cidx) * psi0.amps[b.offset + cidx];
                    numeric.amps[b.offset + r] = s;
                }
            }
            if (evolver) {
                const BlockPropagator ap = block_propagator(evolver->dressed_blocks()[i], t);
                if (b.dim == 1) {
                    block_dev = std::max(block_dev, std::abs(ap.phase - u(0, 0)));
                } else {
                    for (int r = 0; r < 3; ++r)
                        for (int cidx = 0; cidx < 3; ++cidx)
                            block_dev = std::max(block_dev,
                                                 std::abs(ap.u[r][cidx] - u(r, cidx)));
                }
            }
        }

        report.max_norm_drift =
            std::max(report.max_norm_drift, std::abs(numeric.norm2() - psi0.norm2()));
        const ConservedExpectations ce = conserved_expectations(numeric, coupling, atom);
        report.max_m1_drift = std::max(report.max_m1_drift, std::abs(ce.m1 - ref.m1));
        report.max_m2_drift = std::max(report.max_m2_drift, std::abs(ce.m2 - ref.m2));
        report.max_energy_drift =
            std::max(report.max_energy_drift, std::abs(ce.energy - ref.energy));

        if (evolver) {
            report.max_block_deviation = std::max(report.max_block_deviation, block_dev);
            double dist2 = 0.0;
            for (std::size_t s = 0; s < numeric.amps.size(); ++s)
                dist2 += std::norm(analytic.amps[s] - numeric.amps[s]);
            report.max_state_distance =
                std::max(report.max_state_distance, std::sqrt(dist2));
        }
    }
    return report;
}

} // namespace lambdacav

#pragma once

#include "lambdacav/initial_state.hpp"
#include "lambdacav/linalg.hpp"

#include <array>
#include <string>
#include <vector>

namespace lambdacav {

// Brute-force verification path. Everything here is assembled directly from
// the block Hamiltonian with independent detunings and diagonalized
// numerically; it deliberately shares no code with the closed-form modules
// beyond the lattice bookkeeping.

struct DenseBlockHamiltonian {
    BlockIndex block;
    int dim = 0;                             // 3, or 1 for dark slots
    std::array<std::array<double, 3>, 3> h{};
};

DenseBlockHamiltonian assemble_block(const BlockIndex& b, const CouplingConfig& coupling,
                                     const AtomSpec& atom);

// V e^{-i lambda t} V^T from a Jacobi eigendecomposition of h.
CMatrix numeric_propagator(const DenseBlockHamiltonian& h, double t);

// Blockwise numeric evolution of a packet (eigendecomposition per block).
PacketState oracle_evolve(const PacketState& packet, const CouplingConfig& coupling,
                          const AtomSpec& atom, double t);

// Atomic reduced density matrix computed from first principles (product-basis
// regrouping), independent of the observables module.
CMatrix oracle_atomic_rdm(const PacketState& packet);

struct OracleComparison {
    bool analytic_compared = false;    // false when detunings differ
    double max_block_deviation = 0.0;  // max |u_analytic - u_numeric| over blocks/times
    double max_state_distance = 0.0;   // max 2-norm distance between evolved packets
    double max_norm_drift = 0.0;       // numeric-path norm error
    double max_m1_drift = 0.0;         // conservation drift on the numeric path
    double max_m2_drift = 0.0;
    double max_energy_drift = 0.0;
    int lattice_m0 = 0;
    std::vector<double> times;

    std::string to_json() const;
    bool within(double tol) const;
};

// Evolves a reduced-truncation copy of the configured packet along `times`
// through both paths and reports the worst deviations. With unequal detunings
// only the numeric-path consistency numbers are filled in.
OracleComparison compare_evolutions(const FieldAmplitudes& field,
                                    const AtomAmplitudes& atom_amps,
                                    const CouplingConfig& coupling, const AtomSpec& atom,
                                    const std::vector<double>& times,
                                    double tail_tol = 1e-10);

} // namespace lambdacav

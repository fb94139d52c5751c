#pragma once

#include "lambdacav/atoms.hpp"
#include "lambdacav/state_space.hpp"

#include <array>

namespace lambdacav {

// Eigensystem of one (m1, m2) block under equal detunings.
// Rows of o_matrix are the eigenvectors (Psi_+, Psi_0, Psi_-) in the chi basis.
struct DressedBlock {
    BlockIndex block;
    double e0 = 0.0;       // omega1 + Omega1 (m1-m2+1) + Omega2 (m2-1)
    double eps2 = 0.0;     // sqrt((Delta/2)^2 + nu0)
    double nu0 = 0.0;      // (m1-m2+1) mu13^2 + m2 mu23^2
    double e_plus = 0.0;   // e0 + Delta/2 + eps2
    double e_minus = 0.0;  // e0 + Delta/2 - eps2
    double a = 0.0;        // mu13 sqrt(m1-m2+1)
    double c = 0.0;        // mu23 sqrt(m2)
    double delta = 0.0;    // common detuning Delta13 = Delta23
    std::array<std::array<double, 3>, 3> o_matrix{};
    bool degenerate = false;   // dimension-1 block (dark slot)
    bool decoupled = false;    // 3-dim block with vanishing couplings
    double dark_energy = 0.0;  // energy of the lone slot when degenerate
};

double epsilon2(int m1, int m2, double delta13, double mu13, double mu23);

// Equal-detuning eigensystem. Throws std::invalid_argument for unequal
// detunings (those are handled numerically elsewhere) and std::runtime_error
// when the dark-row normalization degenerates unexpectedly.
DressedBlock dressed_block(const BlockIndex& b, const CouplingConfig& coupling,
                           const AtomSpec& atom);

} // namespace lambdacav

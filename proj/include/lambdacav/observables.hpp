#pragma once

#include "lambdacav/initial_state.hpp"
#include "lambdacav/linalg.hpp"

#include <vector>

namespace lambdacav {

// 3x3 atomic reduced density matrix: diagonal P_k, off-diagonals chi_ij.
struct AtomicDensity {
    CMatrix rho{3, 3};

    double p(int k) const { return rho(k - 1, k - 1).real(); }      // k = 1,2,3
    cplx chi(int i, int j) const { return rho(i - 1, j - 1); }      // i < j
};

// Two-mode field reduced density matrix over Fock pairs (n1, n2); the flat
// index is n1 * d2 + n2.
struct FieldDensity {
    int d1 = 0;
    int d2 = 0;
    CMatrix rho;

    int index(int n1, int n2) const { return n1 * d2 + n2; }
};

// Square Husimi grid, symmetric about the origin: node i maps to
// (i - (n-1)/2) * step on each axis; values stored x-major.
struct PhaseGrid {
    double step = 0.0;
    int n = 0;
    std::vector<double> q;

    double coord(int i) const { return (i - 0.5 * (n - 1)) * step; }
    double value(int ix, int iy) const { return q[static_cast<size_t>(ix) * n + iy]; }
};

// Partial trace over both field modes.
AtomicDensity atomic_rdm(const PacketState& packet);

// (Delta P)^2 = p (1 - p); throws std::domain_error outside [0, 1]
// (with a 1e-12 rounding allowance).
double occupation_fluctuation(double p);

// C_coh = 2|chi12| + 2|chi13| + 2|chi23|.
double coherence(const AtomicDensity& rho);

// Full two-mode field density over the packet's Fock support. Quadratic in
// the support size; throws std::runtime_error beyond the memory budget.
FieldDensity field_rdm(const PacketState& packet);

// Single-mode reduction of a two-mode field density (mode = 1 or 2).
CMatrix mode_rdm(const FieldDensity& fd, int mode);

// Single-mode density directly from the packet (size M0+1), bypassing the
// full two-mode matrix.
CMatrix mode_density(const PacketState& packet, int mode);

// Diagonal photon-number distribution of one mode, length M0+1.
std::vector<double> photon_marginal(const PacketState& packet, int mode);

// Q_M = (<n^2> - <n>^2)/<n> - 1; throws std::domain_error when <n> < 1e-12.
double mandel_q(const std::vector<double>& photon_distribution);
double mandel_q(const CMatrix& mode_density);

// Husimi function on a symmetric square grid.
PhaseGrid husimi(const CMatrix& mode_density, double half_width, double step);

// Plain quadrature of a PhaseGrid (sum * step^2).
double grid_integral(const PhaseGrid& grid);

// Phase-space area A = 1/M2 from the closed-form Gaussian moment sum,
// calibrated so a coherent state gives exactly 1 (Fock |1> gives 2).
double phase_area(const CMatrix& mode_density);

// M2 itself (the inverse area), exposed for cross-checks.
double phase_second_moment(const CMatrix& mode_density);

// Quadrature cross-check of M2 over a grid: 2 * integral of Q^2 under the
// same calibration as phase_second_moment.
double phase_second_moment_from_grid(const PhaseGrid& grid);

// |<psi0|psi_t>|^2; throws std::invalid_argument on lattice mismatch.
double autocorrelation(const PacketState& packet0, const PacketState& packet_t);

// Joint distribution of the conserved pair and its marginals.
struct ExcitationDistributions {
    int M0 = 0;
    std::vector<double> joint;        // per lattice block, canonical order
    std::vector<double> marginal_m1;  // index m1 in [0, M0]
    std::vector<double> marginal_m2;  // index m2 in [0, M0+1]
};

ExcitationDistributions excitation_distributions(const PacketState& packet);

// Dark-state occupation per photon number and in total:
//   pd1[n] = |amplitude(m1=n, m2=n+1, k=1)|^2, pd2[n] = |amplitude(n, 0, 2)|^2.
struct DarkStateProbabilities {
    std::vector<double> pd1;
    std::vector<double> pd2;
    double total1 = 0.0;
    double total2 = 0.0;
};

DarkStateProbabilities dark_state_probabilities(const PacketState& packet);

} // namespace lambdacav

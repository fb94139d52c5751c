#pragma once

#include "lambdacav/atoms.hpp"
#include "lambdacav/state_space.hpp"

#include <array>
#include <complex>
#include <memory>
#include <vector>

namespace lambdacav {

using cplx = std::complex<double>;

// Coherent amplitudes for the two modes; scenarios fix the mean photon
// numbers, so construction goes through (mean_n, phase) pairs.
struct FieldAmplitudes {
    cplx alpha1{0.0, 0.0};
    cplx alpha2{0.0, 0.0};

    double nbar1() const { return std::norm(alpha1); }
    double nbar2() const { return std::norm(alpha2); }

    static FieldAmplitudes from_mean_and_phase(double mean_n1, double phase1,
                                               double mean_n2, double phase2);
};

// Normalized internal-state amplitudes gamma_hat_k, k = 1, 2, 3.
struct AtomAmplitudes {
    std::array<cplx, 3> gamma{};
};

// gamma_hat_k = zeta_k e^{i theta_k} / sqrt(sum zeta^2).
// Throws std::invalid_argument when all zeta vanish or any zeta < 0.
AtomAmplitudes normalize_gamma(const std::array<double, 3>& zetas,
                               const std::array<double, 3>& thetas);

// Smallest cutoff nu with Poisson(mean_n) tail mass beyond nu below tail_tol.
int truncation_level(double mean_n, double tail_tol);

// Packed amplitudes over a truncated lattice. Internally the chi_3 components
// carry a flipped sign relative to the physical product basis (the block
// matrices are written with positive couplings); fock_amplitude() undoes the
// flip, slot_amplitude() returns the stored value.
struct PacketState {
    std::shared_ptr<const Lattice> lattice;
    std::vector<cplx> amps;
    double tail_mass = 0.0;
    double time = 0.0;

    cplx slot_amplitude(int m1, int m2, int k) const;
    cplx fock_amplitude(int n1, int n2, int k) const;
    double norm2() const;
};

// Separable packet: two coherent modes x one atomic superposition, truncated
// at Poisson tails below tail_tol per mode and renormalized once; the
// discarded probability is kept in tail_mass. Throws std::runtime_error when
// the implied lattice exceeds the memory budget.
PacketState build_packet(const FieldAmplitudes& field, const AtomAmplitudes& atom,
                         double tail_tol = 1e-12);

struct ConservedExpectations {
    double energy = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;
};

// Blockwise expectation values of the three conserved quantities; valid at
// any time and for unequal detunings.
ConservedExpectations conserved_expectations(const PacketState& packet,
                                             const CouplingConfig& coupling,
                                             const AtomSpec& atom);

// Same quantities from the separable t=0 parameters.
ConservedExpectations closed_form_expectations(const FieldAmplitudes& field,
                                               const AtomAmplitudes& atom_amps,
                                               const CouplingConfig& coupling,
                                               const AtomSpec& atom);

// Time-independent joint distribution of the conserved pair (m1, m2) and its
// marginals, in closed form from the t=0 parameters.
double joint_excitation_closed_form(int m1, int m2, const FieldAmplitudes& field,
                                    const AtomAmplitudes& atom_amps);
double marginal_m1_closed_form(int m1, const FieldAmplitudes& field,
                               const AtomAmplitudes& atom_amps);
double marginal_m2_closed_form(int m2, const FieldAmplitudes& field,
                               const AtomAmplitudes& atom_amps);

// The same joint probability read off a packet: sum of |amplitude|^2 over the
// block's slots (zero outside the lattice).
double joint_excitation_probability(const PacketState& packet, int m1, int m2);

} // namespace lambdacav

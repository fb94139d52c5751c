#include "lambdacav/dressed.hpp"

#include <cmath>
#include <stdexcept>

namespace lambdacav {

double epsilon2(int m1, int m2, double delta13, double mu13, double mu23) {
    const double mt = static_cast<double>(m1 - m2 + 1);
    const double nu0 = mt * mu13 * mu13 + static_cast<double>(m2) * mu23 * mu23;
    const double half = 0.5 * delta13;
    return std::sqrt(half * half + nu0);
}

DressedBlock dressed_block(const BlockIndex& b, const CouplingConfig& coupling,
                           const AtomSpec& atom) {
    if (!coupling.equal_detuning())
        throw std::invalid_argument(
            "dressed_block: closed forms require delta13 == delta23; use the numeric path");
    if (b.m1 < 0 || b.m2 < 0 || b.m2 > b.m1 + 1)
        throw std::invalid_argument("dressed_block: invalid block indices");

    const double delta = coupling.delta13;
    const double Om1 = coupling.omega_field1;
    const double Om2 = coupling.omega_field2;
    const int mt_i = b.m1 - b.m2 + 1;

    DressedBlock d;
    d.block = b;
    d.delta = delta;
    d.e0 = atom.omega1 + Om1 * mt_i + Om2 * (b.m2 - 1);

    if (b.m2 == 0 || b.m2 == b.m1 + 1) {
        d.degenerate = true;
        d.dark_energy = (b.m2 == 0) ? atom.omega2 + Om1 * b.m1          // |n1, 0; 2_A>
                                    : atom.omega1 + Om2 * b.m1;         // |0, n2; 1_A>
        d.eps2 = epsilon2(b.m1, b.m2, delta, coupling.mu13, coupling.mu23);
        return d;
    }

    const double mt = static_cast<double>(mt_i);
    const double a = coupling.mu13 * std::sqrt(mt);
    const double c = coupling.mu23 * std::sqrt(static_cast<double>(b.m2));
    d.a = a;
    d.c = c;
    d.nu0 = a * a + c * c;
    const double half = 0.5 * delta;
    d.eps2 = std::sqrt(half * half + d.nu0);
    d.e_plus = d.e0 + half + d.eps2;
    d.e_minus = d.e0 + half - d.eps2;

    const double scale = std::max(1.0, d.eps2 * d.eps2);
    if (d.nu0 <= 1e-14 * scale) {
        const double mu2 = coupling.mu13 * coupling.mu13 + coupling.mu23 * coupling.mu23;
        if (mu2 > 1e-12 * scale)
            throw std::runtime_error("dressed_block: dark-row normalization degenerated "
                                     "with nonvanishing couplings");
        // uncoupled block: eigenvectors are basis vectors; the chi_3 row takes the
        // shifted energy e0 + delta, position set by the detuning sign
        d.decoupled = true;
        d.eps2 = std::abs(half);
        d.e_plus = d.e0 + half + d.eps2;
        d.e_minus = d.e0 + half - d.eps2;
        if (delta >= 0.0) {
            d.o_matrix = {{{0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}}};
        } else {
            d.o_matrix = {{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}};
        }
        return d;
    }

    // nu_plus = 2 eps2^2 + Delta eps2 and nu_minus = 2 eps2^2 - Delta eps2; the
    // smaller one is computed through nu0 to avoid cancellation at large |Delta|
    double nu_plus, nu_minus;
    if (delta >= 0.0) {
        nu_plus = d.eps2 * (2.0 * d.eps2 + delta);
        nu_minus = 2.0 * d.eps2 * d.nu0 / (d.eps2 + half);
    } else {
        nu_minus = d.eps2 * (2.0 * d.eps2 - delta);
        nu_plus = 2.0 * d.eps2 * d.nu0 / (d.eps2 - half);
    }
    const double n_plus = std::sqrt(nu_plus);
    const double n_minus = std::sqrt(nu_minus);
    const double n_zero = std::sqrt(d.nu0);

    d.o_matrix = {{{a / n_plus, c / n_plus, n_plus / (2.0 * d.eps2)},
                   {-c / n_zero, a / n_zero, 0.0},
                   {a / n_minus, c / n_minus, -n_minus / (2.0 * d.eps2)}}};
    return d;
}

} // namespace lambdacav

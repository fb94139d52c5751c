#include "lambdacav/initial_state.hpp"

#include <cmath>
#include <stdexcept>

namespace lambdacav {

namespace {

// e^{-nbar} nbar^n / n! in log domain; exact 0/1 at nbar == 0.
double poisson_pmf(double nbar, int n) {
    if (n < 0) return 0.0;
    if (nbar == 0.0) return n == 0 ? 1.0 : 0.0;
    return std::exp(-nbar + n * std::log(nbar) - std::lgamma(n + 1.0));
}

constexpr int kMaxM0 = 2000;

} // namespace

FieldAmplitudes FieldAmplitudes::from_mean_and_phase(double mean_n1, double phase1,
                                                     double mean_n2, double phase2) {
    if (mean_n1 < 0.0 || mean_n2 < 0.0)
        throw std::invalid_argument("field amplitudes: mean photon numbers must be >= 0");
    FieldAmplitudes f;
    f.alpha1 = std::polar(std::sqrt(mean_n1), phase1);
    f.alpha2 = std::polar(std::sqrt(mean_n2), phase2);
    return f;
}

AtomAmplitudes normalize_gamma(const std::array<double, 3>& zetas,
                               const std::array<double, 3>& thetas) {
    double sum2 = 0.0;
    for (double z : zetas) {
        if (z < 0.0)
            throw std::invalid_argument("normalize_gamma: moduli must be non-negative");
        sum2 += z * z;
    }
    if (sum2 == 0.0)
        throw std::invalid_argument("normalize_gamma: all moduli vanish");
    const double inv = 1.0 / std::sqrt(sum2);
    AtomAmplitudes a;
    for (int k = 0; k < 3; ++k)
        a.gamma[k] = std::polar(zetas[k] * inv, thetas[k]);
    return a;
}

int truncation_level(double mean_n, double tail_tol) {
    if (mean_n < 0.0)
        throw std::invalid_argument("truncation_level: mean_n must be >= 0");
    if (!(tail_tol > 0.0 && tail_tol < 1.0))
        throw std::invalid_argument("truncation_level: tail_tol must lie in (0, 1)");
    double term = std::exp(-mean_n);
    double cumulative = term;
    int nu = 0;
    const int hard_cap = static_cast<int>(mean_n) + 2000;
    while (1.0 - cumulative >= tail_tol) {
        if (++nu > hard_cap)
            throw std::runtime_error("truncation_level: tail sum failed to converge");
        term *= mean_n / nu;
        cumulative += term;
    }
    return nu;
}

cplx PacketState::slot_amplitude(int m1, int m2, int k) const {
    const int s = lattice->slot(m1, m2, k);
    return s < 0 ? cplx{0.0, 0.0} : amps[s];
}

cplx PacketState::fock_amplitude(int n1, int n2, int k) const {
    if (n1 < 0 || n2 < 0) return {0.0, 0.0};
    const BlockIndex b = fock_to_block(n1, n2, k);
    const cplx v = slot_amplitude(b.m1, b.m2, k);
    return k == 3 ? -v : v;
}

double PacketState::norm2() const {
    double s = 0.0;
    for (const cplx& a : amps) s += std::norm(a);
    return s;
}

PacketState build_packet(const FieldAmplitudes& field, const AtomAmplitudes& atom,
                         double tail_tol) {
    const int nu1 = truncation_level(field.nbar1(), tail_tol);
    const int nu2 = truncation_level(field.nbar2(), tail_tol);
    const int M0 = nu1 + nu2 + 1;
    if (M0 > kMaxM0)
        throw std::runtime_error("build_packet: requested tail tolerance needs a lattice "
                                 "beyond the memory budget (M0 > " +
                                 std::to_string(kMaxM0) + ")");

    auto lattice = std::make_shared<Lattice>(M0);

    // alpha^n e^{-nbar/2} / sqrt(n!) by stable recurrence; covers n <= M0.
    std::vector<cplx> pois1(M0 + 1), pois2(M0 + 1);
    pois1[0] = std::exp(-0.5 * field.nbar1());
    pois2[0] = std::exp(-0.5 * field.nbar2());
    for (int n = 1; n <= M0; ++n) {
        pois1[n] = pois1[n - 1] * field.alpha1 / std::sqrt(static_cast<double>(n));
        pois2[n] = pois2[n - 1] * field.alpha2 / std::sqrt(static_cast<double>(n));
    }

    PacketState psi;
    psi.lattice = lattice;
    psi.amps.assign(lattice->total_dim(), cplx{0.0, 0.0});

    double pre_norm2 = 0.0;
    for (const Block& b : lattice->blocks()) {
        for (int k = 1; k <= 3; ++k) {
            if (!lattice->k_valid(b, k)) continue;
            const FockLabel f = chi_to_fock({b.m1, b.m2}, k);
            cplx c = pois1[f.n1] * pois2[f.n2] * atom.gamma[k - 1];
            if (k == 3) c = -c;
            const int pos = b.dim == 3 ? b.offset + (k - 1) : b.offset;
            psi.amps[pos] = c;
            pre_norm2 += std::norm(c);
        }
    }
    if (pre_norm2 <= 0.0)
        throw std::runtime_error("build_packet: zero norm before renormalization");

    psi.tail_mass = std::max(0.0, 1.0 - pre_norm2);
    const double scale = 1.0 / std::sqrt(pre_norm2);
    for (cplx& a : psi.amps) a *= scale;
    return psi;
}

ConservedExpectations conserved_expectations(const PacketState& packet,
                                             const CouplingConfig& coupling,
                                             const AtomSpec& atom) {
    ConservedExpectations out;
    const Lattice& lat = *packet.lattice;
    for (const Block& b : lat.blocks()) {
        if (b.dim == 1) {
            const double p = std::norm(packet.amps[b.offset]);
            if (p == 0.0) continue;
            const double energy = (b.lone_k == 2)
                                      ? atom.omega2 + coupling.omega_field1 * b.m1
                                      : atom.omega1 + coupling.omega_field2 * b.m1;
            out.energy += p * energy;
            out.m1 += p * b.m1;
            out.m2 += p * b.m2;
            continue;
        }
        const cplx g1 = packet.amps[b.offset];
        const cplx g2 = packet.amps[b.offset + 1];
        const cplx g3 = packet.amps[b.offset + 2];
        const double nrm = std::norm(g1) + std::norm(g2) + std::norm(g3);
        if (nrm == 0.0) continue;
        const int mt = b.m1 - b.m2 + 1;
        const double e0 = atom.omega1 + coupling.omega_field1 * mt +
                          coupling.omega_field2 * (b.m2 - 1);
        const double a = coupling.mu13 * std::sqrt(static_cast<double>(mt));
        const double c = coupling.mu23 * std::sqrt(static_cast<double>(b.m2));
        out.energy += e0 * nrm + (coupling.delta13 - coupling.delta23) * std::norm(g2) +
                      coupling.delta13 * std::norm(g3) +
                      2.0 * a * std::real(std::conj(g1) * g3) +
                      2.0 * c * std::real(std::conj(g2) * g3);
        out.m1 += nrm * b.m1;
        out.m2 += nrm * b.m2;
    }
    return out;
}

ConservedExpectations closed_form_expectations(const FieldAmplitudes& field,
                                               const AtomAmplitudes& atom_amps,
                                               const CouplingConfig& coupling,
                                               const AtomSpec& atom) {
    const auto& g = atom_amps.gamma;
    ConservedExpectations out;
    out.energy = atom.omega1 * std::norm(g[0]) + atom.omega2 * std::norm(g[1]) +
                 atom.omega3 * std::norm(g[2]) + coupling.omega_field1 * field.nbar1() +
                 coupling.omega_field2 * field.nbar2() -
                 2.0 * coupling.mu13 * std::real(field.alpha1 * g[0] * std::conj(g[2])) -
                 2.0 * coupling.mu23 * std::real(field.alpha2 * g[1] * std::conj(g[2]));
    out.m1 = field.nbar1() + field.nbar2() + std::norm(g[2]);
    out.m2 = field.nbar2() + std::norm(g[0]) + std::norm(g[2]);
    return out;
}

double joint_excitation_closed_form(int m1, int m2, const FieldAmplitudes& field,
                                    const AtomAmplitudes& atom_amps) {
    if (m1 < 0 || m2 < 0 || m2 > m1 + 1) return 0.0;
    const double n1 = field.nbar1(), n2 = field.nbar2();
    const auto& g = atom_amps.gamma;
    const int mt = m1 - m2 + 1;
    // bracket formula with the factorials cancelled term by term
    double p = 0.0;
    if (m2 >= 1) p += poisson_pmf(n1, mt) * poisson_pmf(n2, m2 - 1) * std::norm(g[0]);
    if (mt >= 1) p += poisson_pmf(n1, mt - 1) * poisson_pmf(n2, m2) * std::norm(g[1]);
    if (m2 >= 1 && mt >= 1)
        p += poisson_pmf(n1, mt - 1) * poisson_pmf(n2, m2 - 1) * std::norm(g[2]);
    return p;
}

double marginal_m1_closed_form(int m1, const FieldAmplitudes& field,
                               const AtomAmplitudes& atom_amps) {
    if (m1 < 0) return 0.0;
    const double nsum = field.nbar1() + field.nbar2();
    const auto& g = atom_amps.gamma;
    return poisson_pmf(nsum, m1) * (std::norm(g[0]) + std::norm(g[1])) +
           poisson_pmf(nsum, m1 - 1) * std::norm(g[2]);
}

double marginal_m2_closed_form(int m2, const FieldAmplitudes& field,
                               const AtomAmplitudes& atom_amps) {
    if (m2 < 0) return 0.0;
    const double n2 = field.nbar2();
    const auto& g = atom_amps.gamma;
    return poisson_pmf(n2, m2) * std::norm(g[1]) +
           poisson_pmf(n2, m2 - 1) * (std::norm(g[0]) + std::norm(g[2]));
}

double joint_excitation_probability(const PacketState& packet, int m1, int m2) {
    const Block* b = packet.lattice->block_at(m1, m2);
    if (!b) return 0.0;
    double p = 0.0;
    for (int i = 0; i < b->dim; ++i) p += std::norm(packet.amps[b->offset + i]);
    return p;
}

} // namespace lambdacav

#include "lambdacav/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace lambdacav {

namespace {

// physical product-basis amplitude at a block slot (flips the stored chi_3 sign)
cplx phys_amp(const PacketState& packet, int m1, int m2, int k) {
    const cplx v = packet.slot_amplitude(m1, m2, k);
    return k == 3 ? -v : v;
}

void check_mode(int mode) {
    if (mode != 1 && mode != 2)
        throw std::invalid_argument("mode index must be 1 or 2");
}

constexpr int kMaxFieldDim = 3000;

} // namespace

AtomicDensity atomic_rdm(const PacketState& packet) {
    const Lattice& lat = *packet.lattice;
    double p1 = 0.0, p2 = 0.0, p3 = 0.0;
    cplx chi12 = 0.0, chi13 = 0.0, chi23 = 0.0;
    for (const Block& b : lat.blocks()) {
        const cplx a1 = phys_amp(packet, b.m1, b.m2, 1);
        const cplx a2 = phys_amp(packet, b.m1, b.m2, 2);
        const cplx a3 = phys_amp(packet, b.m1, b.m2, 3);
        p1 += std::norm(a1);
        p2 += std::norm(a2);
        p3 += std::norm(a3);
        // same Fock pair, different atomic level: partner blocks are shifted
        chi12 += a1 * std::conj(phys_amp(packet, b.m1, b.m2 - 1, 2));
        chi13 += a1 * std::conj(phys_amp(packet, b.m1 + 1, b.m2, 3));
        chi23 += a2 * std::conj(phys_amp(packet, b.m1 + 1, b.m2 + 1, 3));
    }
    AtomicDensity d;
    d.rho(0, 0) = p1;
    d.rho(1, 1) = p2;
    d.rho(2, 2) = p3;
    d.rho(0, 1) = chi12;
    d.rho(1, 0) = std::conj(chi12);
    d.rho(0, 2) = chi13;
    d.rho(2, 0) = std::conj(chi13);
    d.rho(1, 2) = chi23;
    d.rho(2, 1) = std::conj(chi23);
    return d;
}

double occupation_fluctuation(double p) {
    if (p < -1e-12 || p > 1.0 + 1e-12)
        throw std::domain_error("occupation_fluctuation: probability outside [0, 1]");
    p = std::min(1.0, std::max(0.0, p));
    return p * (1.0 - p);
}

double coherence(const AtomicDensity& rho) {
    return 2.0 * (std::abs(rho.chi(1, 2)) + std::abs(rho.chi(1, 3)) + std::abs(rho.chi(2, 3)));
}

FieldDensity field_rdm(const PacketState& packet) {
    const Lattice& lat = *packet.lattice;
    const int d = lat.M0() + 1;
    if (d * d > kMaxFieldDim)   // flat two-mode dimension per axis
        throw std::runtime_error("field_rdm: two-mode support exceeds the memory budget");

    FieldDensity fd;
    fd.d1 = d;
    fd.d2 = d;
    fd.rho = CMatrix(d * d, d * d);

    for (int k = 1; k <= 3; ++k) {
        std::vector<std::pair<int, cplx>> entries;
        for (const Block& b : lat.blocks()) {
            if (!lat.k_valid(b, k)) continue;
            const FockLabel f = chi_to_fock({b.m1, b.m2}, k);
            const cplx v = packet.amps[b.dim == 3 ? b.offset + (k - 1) : b.offset];
            if (v == cplx{0.0, 0.0}) continue;
            entries.emplace_back(fd.index(f.n1, f.n2), v);
        }
        for (const auto& [i, vi] : entries)
            for (const auto& [j, vj] : entries) fd.rho(i, j) += vi * std::conj(vj);
    }
    return fd;
}

CMatrix mode_rdm(const FieldDensity& fd, int mode) {
    check_mode(mode);
    const int d = mode == 1 ? fd.d1 : fd.d2;
    const int dother = mode == 1 ? fd.d2 : fd.d1;
    CMatrix out(d, d);
    for (int n = 0; n < d; ++n)
        for (int np = 0; np < d; ++np) {
            cplx s = 0.0;
            for (int m = 0; m < dother; ++m) {
                const int i = mode == 1 ? fd.index(n, m) : fd.index(m, n);
                const int j = mode == 1 ? fd.index(np, m) : fd.index(m, np);
                s += fd.rho(i, j);
            }
            out(n, np) = s;
        }
    return out;
}

CMatrix mode_density(const PacketState& packet, int mode) {
    check_mode(mode);
    const Lattice& lat = *packet.lattice;
    const int d = lat.M0() + 1;
    CMatrix out(d, d);
    for (int k = 1; k <= 3; ++k) {
        CMatrix f(d, d);   // amplitude over (n1, n2) at fixed atomic level
        for (const Block& b : lat.blocks()) {
            if (!lat.k_valid(b, k)) continue;
            const FockLabel lbl = chi_to_fock({b.m1, b.m2}, k);
            f(lbl.n1, lbl.n2) = packet.amps[b.dim == 3 ? b.offset + (k - 1) : b.offset];
        }
        if (mode == 1) {
            for (int n = 0; n < d; ++n)
                for (int np = n; np < d; ++np) {
                    cplx s = 0.0;
                    for (int m = 0; m < d; ++m) s += f(n, m) * std::conj(f(np, m));
                    out(n, np) += s;
                    if (np != n) out(np, n) += std::conj(s);
                }
        } else {
            for (int m = 0; m < d; ++m)
                for (int mp = m; mp < d; ++mp) {
                    cplx s = 0.0;
                    for (int n = 0; n < d; ++n) s += f(n, m) * std::conj(f(n, mp));
                    out(m, mp) += s;
                    if (mp != m) out(mp, m) += std::conj(s);
                }
        }
    }
    return out;
}

std::vector<double> photon_marginal(const PacketState& packet, int mode) {
    check_mode(mode);
    const Lattice& lat = *packet.lattice;
    std::vector<double> p(lat.M0() + 1, 0.0);
    for (const Block& b : lat.blocks())
        for (int k = 1; k <= 3; ++k) {
            if (!lat.k_valid(b, k)) continue;
            const FockLabel f = chi_to_fock({b.m1, b.m2}, k);
            const int n = mode == 1 ? f.n1 : f.n2;
            p[n] += std::norm(packet.amps[b.dim == 3 ? b.offset + (k - 1) : b.offset]);
        }
    return p;
}

double mandel_q(const std::vector<double>& photon_distribution) {
    double n1 = 0.0, n2 = 0.0;
    for (std::size_t n = 0; n < photon_distribution.size(); ++n) {
        n1 += static_cast<double>(n) * photon_distribution[n];
        n2 += static_cast<double>(n) * static_cast<double>(n) * photon_distribution[n];
    }
    if (n1 < 1e-12)
        throw std::domain_error("mandel_q: mean photon number vanishes");
    return (n2 - n1 * n1) / n1 - 1.0;
}

double mandel_q(const CMatrix& mode_density) {
    std::vector<double> p(mode_density.rows());
    for (int n = 0; n < mode_density.rows(); ++n) p[n] = mode_density(n, n).real();
    return mandel_q(p);
}

PhaseGrid husimi(const CMatrix& rho, double half_width, double step) {
    if (rho.rows() != rho.cols())
        throw std::invalid_argument("husimi: density matrix must be square");
    if (!(half_width > 0.0) || !(step > 0.0))
        throw std::invalid_argument("husimi: grid parameters must be positive");
    const int d = rho.rows();
    PhaseGrid grid;
    grid.step = step;
    grid.n = 2 * static_cast<int>(std::llround(half_width / step)) + 1;
    grid.q.assign(static_cast<size_t>(grid.n) * grid.n, 0.0);

    std::vector<cplx> w(d);
    for (int ix = 0; ix < grid.n; ++ix) {
        const double x = grid.coord(ix);
        for (int iy = 0; iy < grid.n; ++iy) {
            const double y = grid.coord(iy);
            const cplx beta{x, y};
            // w_nu = e^{-|beta|^2/2} beta^nu / sqrt(nu!), |w_nu| <= 1
            w[0] = std::exp(-0.5 * (x * x + y * y));
            for (int nu = 1; nu < d; ++nu)
                w[nu] = w[nu - 1] * beta / std::sqrt(static_cast<double>(nu));
            cplx s = 0.0;
            for (int nu = 0; nu < d; ++nu) {
                cplx row = 0.0;
                for (int mu = 0; mu < d; ++mu) row += rho(nu, mu) * w[mu];
                s += std::conj(w[nu]) * row;
            }
            grid.q[static_cast<size_t>(ix) * grid.n + iy] = s.real() / M_PI;
        }
    }
    return grid;
}

double grid_integral(const PhaseGrid& grid) {
    double s = 0.0;
    for (double v : grid.q) s += v;
    return s * grid.step * grid.step;
}

double phase_second_moment(const CMatrix& rho) {
    if (rho.rows() != rho.cols())
        throw std::invalid_argument("phase_second_moment: density matrix must be square");
    const int d = rho.rows();
    const int smax = 2 * (d - 1);

    std::vector<double> lg(2 * d), inv_sqrt_fact(d);
    for (int n = 0; n < 2 * d; ++n) lg[n] = std::lgamma(n + 1.0);
    for (int n = 0; n < d; ++n) inv_sqrt_fact[n] = std::exp(-0.5 * lg[n]);

    const bool tabulated = smax < 180;   // S!/2^S representable in double
    std::vector<double> ts;
    if (tabulated) {
        ts.resize(smax + 1);
        for (int s = 0; s <= smax; ++s) ts[s] = std::exp(lg[s] - s * M_LN2);
    }

    double m2 = 0.0;
    for (int s = 0; s <= smax; ++s) {
        const int lo = std::max(0, s - d + 1);
        const int hi = std::min(d - 1, s);
        for (int n = lo; n <= hi; ++n) {
            const int p = s - n;
            for (int m = lo; m <= hi; ++m) {
                const int q = s - m;
                const double rr = (rho(n, m) * rho(p, q)).real();
                if (rr == 0.0) continue;
                const double w =
                    tabulated
                        ? ts[s] * (inv_sqrt_fact[n] * inv_sqrt_fact[m]) *
                              (inv_sqrt_fact[p] * inv_sqrt_fact[q])
                        : std::exp(lg[s] - s * M_LN2 -
                                   0.5 * (lg[n] + lg[m] + lg[p] + lg[q]));
                m2 += rr * w;
            }
        }
    }
    return m2;
}

double phase_area(const CMatrix& rho) {
    const double m2 = phase_second_moment(rho);
    if (!(m2 > 0.0))
        throw std::runtime_error("phase_area: second moment is not positive");
    return 1.0 / m2;
}

double phase_second_moment_from_grid(const PhaseGrid& grid) {
    double s = 0.0;
    for (double v : grid.q) s += v * v;
    return 2.0 * M_PI * s * grid.step * grid.step;
}

double autocorrelation(const PacketState& packet0, const PacketState& packet_t) {
    if (!packet0.lattice || !packet_t.lattice ||
        packet0.lattice->M0() != packet_t.lattice->M0() ||
        packet0.amps.size() != packet_t.amps.size())
        throw std::invalid_argument("autocorrelation: packets live on different lattices");
    cplx overlap = 0.0;
    for (std::size_t i = 0; i < packet0.amps.size(); ++i)
        overlap += std::conj(packet0.amps[i]) * packet_t.amps[i];
    return std::norm(overlap);
}

ExcitationDistributions excitation_distributions(const PacketState& packet) {
    const Lattice& lat = *packet.lattice;
    ExcitationDistributions out;
    out.M0 = lat.M0();
    out.joint.resize(lat.blocks().size());
    out.marginal_m1.assign(lat.M0() + 1, 0.0);
    out.marginal_m2.assign(lat.M0() + 2, 0.0);
    for (std::size_t i = 0; i < lat.blocks().size(); ++i) {
        const Block& b = lat.blocks()[i];
        double p = 0.0;
        for (int s = 0; s < b.dim; ++s) p += std::norm(packet.amps[b.offset + s]);
        out.joint[i] = p;
        out.marginal_m1[b.m1] += p;
        out.marginal_m2[b.m2] += p;
    }
    return out;
}

DarkStateProbabilities dark_state_probabilities(const PacketState& packet) {
    const Lattice& lat = *packet.lattice;
    DarkStateProbabilities out;
    out.pd1.resize(lat.M0() + 1);
    out.pd2.resize(lat.M0() + 1);
    for (int n = 0; n <= lat.M0(); ++n) {
        out.pd1[n] = std::norm(packet.slot_amplitude(n, n + 1, 1));
        out.pd2[n] = std::norm(packet.slot_amplitude(n, 0, 2));
        out.total1 += out.pd1[n];
        out.total2 += out.pd2[n];
    }
    return out;
}

} // namespace lambdacav

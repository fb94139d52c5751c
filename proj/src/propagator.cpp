#include "lambdacav/propagator.hpp"

#include <cmath>
#include <stdexcept>

namespace lambdacav {

namespace {

// sin(eps2 t)/eps2 with a series fallback where the direct quotient loses
// accuracy (small couplings at the lattice edge).
double sinc_scaled(double eps2, double t) {
    const double x = eps2 * t;
    if (std::abs(x) < 1e-6) {
        const double x2 = x * x;
        return t * (1.0 - x2 / 6.0 * (1.0 - x2 / 20.0));
    }
    return std::sin(x) / eps2;
}

} // namespace

BlockPropagator block_propagator(const DressedBlock& db, double t) {
    BlockPropagator p;
    p.block = db.block;
    p.t = t;

    if (db.degenerate) {
        p.scalar = true;
        p.phase = std::polar(1.0, -db.dark_energy * t);
        return p;
    }

    if (t == 0.0) {   // bitwise identity, so zero-time evolution is a no-op
        p.u[0][0] = p.u[1][1] = p.u[2][2] = cplx{1.0, 0.0};
        return p;
    }

    const double delta = db.delta;
    // phase_d is derived from phase0 and the small half-detuning factor so the
    // inter-column phase relations stay exact for large e0*t arguments.
    const cplx phase0 = std::polar(1.0, -db.e0 * t);
    const cplx half_det = std::polar(1.0, -0.5 * delta * t);
    const cplx phase_d = phase0 * half_det;
    const double x = db.eps2 * t;
    const double cosx = std::cos(x);
    const double sinc = sinc_scaled(db.eps2, t);
    // g = cos(eps2 t) + i (Delta/2) sin(eps2 t)/eps2 combines the two dressed
    // phases: e^{i eps2 t}/nu_- + e^{-i eps2 t}/nu_+ = e^{-i Delta t/2} g / nu0.
    const cplx g{cosx, 0.5 * delta * sinc};

    if (db.decoupled) {
        p.u[0][0] = phase0;
        p.u[1][1] = phase0;
        p.u[2][2] = phase_d * std::conj(g);
        return p;
    }

    const double a2 = db.a * db.a;
    const double c2 = db.c * db.c;
    const double ac = db.a * db.c;
    const cplx ebn = half_det * g;   // nu0 * bracket term
    const cplx inv_n0{1.0 / db.nu0, 0.0};
    const cplx mi{0.0, -1.0};

    p.u[0][0] = phase0 * (c2 + a2 * ebn) * inv_n0;
    p.u[0][1] = phase0 * ac * (ebn - 1.0) * inv_n0;
    p.u[1][0] = p.u[0][1];
    p.u[1][1] = phase0 * (a2 + c2 * ebn) * inv_n0;
    p.u[0][2] = mi * phase_d * db.a * sinc;
    p.u[2][0] = p.u[0][2];
    p.u[1][2] = mi * phase_d * db.c * sinc;
    p.u[2][1] = p.u[1][2];
    p.u[2][2] = phase_d * std::conj(g);
    return p;
}

Evolver::Evolver(std::shared_ptr<const Lattice> lattice, const CouplingConfig& coupling,
                 const AtomSpec& atom)
    : lattice_(std::move(lattice)) {
    if (!lattice_) throw std::invalid_argument("Evolver: null lattice");
    dressed_.reserve(lattice_->blocks().size());
    for (const Block& b : lattice_->blocks())
        dressed_.push_back(dressed_block({b.m1, b.m2}, coupling, atom));
}

PacketState Evolver::evolve(const PacketState& packet, double t) const {
    if (!packet.lattice || packet.lattice->M0() != lattice_->M0() ||
        static_cast<int>(packet.amps.size()) != lattice_->total_dim())
        throw std::invalid_argument("Evolver::evolve: packet lattice mismatch");

    PacketState out;
    out.lattice = lattice_;
    out.amps.resize(packet.amps.size());
    out.tail_mass = packet.tail_mass;
    out.time = packet.time + t;

    const auto& blocks = lattice_->blocks();
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const Block& b = blocks[i];
        const BlockPropagator p = block_propagator(dressed_[i], t);
        if (b.dim == 1) {
            out.amps[b.offset] = packet.amps[b.offset] * p.phase;
            continue;
        }
        const cplx c1 = packet.amps[b.offset];
        const cplx c2 = packet.amps[b.offset + 1];
        const cplx c3 = packet.amps[b.offset + 2];
        // G_k = sum_{k'} c_{k'} u_{k',k}
        out.amps[b.offset] = c1 * p.u[0][0] + c2 * p.u[1][0] + c3 * p.u[2][0];
        out.amps[b.offset + 1] = c1 * p.u[0][1] + c2 * p.u[1][1] + c3 * p.u[2][1];
        out.amps[b.offset + 2] = c1 * p.u[0][2] + c2 * p.u[1][2] + c3 * p.u[2][2];
    }
    return out;
}

} // namespace lambdacav

#pragma once

#include "lambdacav/dressed.hpp"
#include "lambdacav/initial_state.hpp"

#include <array>
#include <memory>
#include <vector>

namespace lambdacav {

// Evolution operator restricted to one block: a 3x3 unitary, or a single
// phase for the dimension-1 dark slots.
struct BlockPropagator {
    BlockIndex block;
    double t = 0.0;
    bool scalar = false;
    cplx phase{1.0, 0.0};
    std::array<std::array<cplx, 3>, 3> u{};
};

// Closed-form propagator element-by-element; equal detunings only (the
// dressed block already enforces that). Degenerate blocks get exp(-i E t).
BlockPropagator block_propagator(const DressedBlock& db, double t);

// Precomputed dressed data for every block of a lattice; evolve() then gives
// the packet at any requested time in a single pass.
class Evolver {
public:
    Evolver(std::shared_ptr<const Lattice> lattice, const CouplingConfig& coupling,
            const AtomSpec& atom);

    const std::vector<DressedBlock>& dressed_blocks() const { return dressed_; }
    const std::shared_ptr<const Lattice>& lattice() const { return lattice_; }

    // |psi(packet.time + t)> from |psi(packet.time)>; norm-preserving.
    // Throws std::invalid_argument when the packet lives on a different lattice.
    PacketState evolve(const PacketState& packet, double t) const;

private:
    std::shared_ptr<const Lattice> lattice_;
    std::vector<DressedBlock> dressed_;
};

} // namespace lambdacav

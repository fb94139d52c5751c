#include "lambdacav/state_space.hpp"

namespace lambdacav {

Lattice::Lattice(int M0) : M0_(M0) {
    if (M0 < 0) throw std::invalid_argument("Lattice: M0 must be nonnegative");
    blocks_.reserve(static_cast<size_t>(M0 + 1) * (M0 + 4) / 2);
    int offset = 0;
    for (int m1 = 0; m1 <= M0; ++m1) {
        for (int m2 = 0; m2 <= m1 + 1; ++m2) {
            Block b;
            b.m1 = m1;
            b.m2 = m2;
            b.offset = offset;
            if (m2 >= 1 && m2 <= m1) {
                b.dim = 3;
                b.lone_k = 0;
            } else {
                b.dim = 1;
                b.lone_k = (m2 == 0) ? 2 : 1;
            }
            offset += b.dim;
            blocks_.push_back(b);
        }
    }
    total_dim_ = offset;
}

const Block* Lattice::block_at(int m1, int m2) const {
    if (m1 < 0 || m1 > M0_ || m2 < 0 || m2 > m1 + 1) return nullptr;
    // blocks for m1' < m1 count sum_{m1'} (m1'+2) = m1(m1+3)/2
    const size_t idx = static_cast<size_t>(m1) * (m1 + 3) / 2 + m2;
    return &blocks_[idx];
}

int Lattice::slot(int m1, int m2, int k) const {
    const Block* b = block_at(m1, m2);
    if (!b || !k_valid(*b, k)) return -1;
    return b->dim == 3 ? b->offset + (k - 1) : b->offset;
}

FockLabel chi_to_fock(const BlockIndex& b, int k) {
    const bool three_dim = (b.m2 >= 1 && b.m2 <= b.m1);
    const bool valid = three_dim ? (k >= 1 && k <= 3)
                                 : (b.m2 == 0 ? k == 2 : k == 1);
    if (!valid) throw std::invalid_argument("chi_to_fock: atomic level not present in this block");
    switch (k) {
        case 1: return {b.m1 - b.m2 + 1, b.m2 - 1, 1};
        case 2: return {b.m1 - b.m2, b.m2, 2};
        default: return {b.m1 - b.m2, b.m2 - 1, 3};
    }
}

BlockIndex fock_to_block(int n1, int n2, int k) {
    if (n1 < 0 || n2 < 0) throw std::invalid_argument("fock_to_block: negative photon count");
    if (k < 1 || k > 3) throw std::invalid_argument("fock_to_block: atomic level out of range");
    BlockIndex b;
    b.m1 = n1 + n2 + (k == 3 ? 1 : 0);
    b.m2 = n2 + (k == 1 || k == 3 ? 1 : 0);
    return b;
}

} // namespace lambdacav

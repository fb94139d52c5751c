#pragma once

#include <stdexcept>
#include <vector>

namespace lambdacav {

// Two conserved excitation numbers label each invariant subspace:
//   m1 = n1 + n2 + [k==3],  m2 = n2 + [k==1] + [k==3].
// A block couples at most three product states |n1,n2;k_A>.
struct BlockIndex {
    int m1 = 0;
    int m2 = 0;
};

struct FockLabel {
    int n1 = 0;
    int n2 = 0;
    int k = 0;   // atomic level 1, 2, 3
};

struct Block {
    int m1 = 0;
    int m2 = 0;
    int offset = 0;   // first slot in the packed amplitude vector
    int dim = 0;      // 3 when 1 <= m2 <= m1, otherwise 1
    int lone_k = 0;   // valid k for dim-1 blocks (2 when m2==0, 1 when m2==m1+1)
};

// Truncated lattice of all blocks with 0 <= m1 <= M0, 0 <= m2 <= m1+1,
// in ascending (m1, m2) order; within a block slots are ordered k = 1,2,3.
class Lattice {
public:
    explicit Lattice(int M0);

    int M0() const { return M0_; }
    int total_dim() const { return total_dim_; }
    const std::vector<Block>& blocks() const { return blocks_; }

    // nullptr when (m1, m2) is outside the lattice
    const Block* block_at(int m1, int m2) const;

    bool k_valid(const Block& b, int k) const {
        return b.dim == 3 ? (k >= 1 && k <= 3) : k == b.lone_k;
    }

    // packed slot index, or -1 when the slot does not exist
    int slot(int m1, int m2, int k) const;

    static int dimension_formula(int M0) { return (M0 + 1) * (3 * M0 + 4) / 2; }

private:
    int M0_ = 0;
    int total_dim_ = 0;
    std::vector<Block> blocks_;
};

// |chi_1> = |m1-m2+1, m2-1; 1_A>, |chi_2> = |m1-m2, m2; 2_A>, |chi_3> = |m1-m2, m2-1; 3_A>.
// Throws std::invalid_argument when k is not valid for the block.
FockLabel chi_to_fock(const BlockIndex& b, int k);

// Inverse map; total on n1, n2 >= 0 and k in {1,2,3}.
BlockIndex fock_to_block(int n1, int n2, int k);

} // namespace lambdacav

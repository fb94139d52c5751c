#include "lambdacav/state_space.hpp"

#include <doctest.h>

using namespace lambdacav;

TEST_CASE("lattice dimension formula matches explicit block enumeration") {
    for (int M0 = 0; M0 <= 40; ++M0) {
        Lattice lat(M0);
        int sum = 0;
        for (const Block& b : lat.blocks()) sum += b.dim;
        CHECK(sum == lat.total_dim());
        CHECK(lat.total_dim() == Lattice::dimension_formula(M0));
        CHECK(lat.total_dim() == (M0 + 1) * (3 * M0 + 4) / 2);
    }
}

TEST_CASE("frozen lattice sizes") {
    // nbar = 3 per mode at tail 1e-12 truncates at 22 photons, M0 = 45.
    CHECK(Lattice(45).total_dim() == 3197);
    // nbar = 1 per mode at tail 1e-12 truncates at 14 photons, M0 = 29.
    CHECK(Lattice(29).total_dim() == 1365);
    CHECK(Lattice(0).total_dim() == 2);
}

TEST_CASE("block structure: one three-dimensional block iff 1 <= m2 <= m1") {
    Lattice lat(12);
    CHECK(static_cast<int>(lat.blocks().size()) == (12 + 1) * (12 + 4) / 2);
    for (const Block& b : lat.blocks()) {
        CHECK(b.m2 >= 0);
        CHECK(b.m2 <= b.m1 + 1);
        if (b.m2 >= 1 && b.m2 <= b.m1) {
            CHECK(b.dim == 3);
            CHECK(b.lone_k == 0);
        } else if (b.m2 == 0) {
            CHECK(b.dim == 1);
            CHECK(b.lone_k == 2);
        } else {
            CHECK(b.m2 == b.m1 + 1);
            CHECK(b.dim == 1);
            CHECK(b.lone_k == 1);
        }
    }
}

TEST_CASE("offsets are contiguous and ascending in (m1, m2)") {
    Lattice lat(9);
    int expected_offset = 0;
    int prev_m1 = -1, prev_m2 = -1;
    for (const Block& b : lat.blocks()) {
        CHECK(b.offset == expected_offset);
        expected_offset += b.dim;
        const bool ascending = (b.m1 > prev_m1) || (b.m1 == prev_m1 && b.m2 > prev_m2);
        CHECK(ascending);
        prev_m1 = b.m1;
        prev_m2 = b.m2;
    }
    CHECK(expected_offset == lat.total_dim());
}

TEST_CASE("label maps invert each other on every slot") {
    Lattice lat(11);
    for (const Block& b : lat.blocks()) {
        for (int k = 1; k <= 3; ++k) {
            if (!lat.k_valid(b, k)) continue;
            const FockLabel f = chi_to_fock({b.m1, b.m2}, k);
            CHECK(f.n1 >= 0);
            CHECK(f.n2 >= 0);
            const BlockIndex back = fock_to_block(f.n1, f.n2, f.k);
            CHECK(back.m1 == b.m1);
            CHECK(back.m2 == b.m2);
            CHECK(f.k == k);
            // conserved-quantity definition of the labels
            CHECK(b.m1 == f.n1 + f.n2 + (k == 3 ? 1 : 0));
            CHECK(b.m2 == f.n2 + (k == 1 ? 1 : 0) + (k == 3 ? 1 : 0));
        }
    }
}

TEST_CASE("slot lookup agrees with block offsets and rejects absent slots") {
    Lattice lat(7);
    for (const Block& b : lat.blocks()) {
        for (int k = 1; k <= 3; ++k) {
            const int s = lat.slot(b.m1, b.m2, k);
            if (lat.k_valid(b, k)) {
                CHECK(s == (b.dim == 3 ? b.offset + (k - 1) : b.offset));
            } else {
                CHECK(s == -1);
            }
        }
    }
    CHECK(lat.slot(8, 0, 2) == -1);      // beyond M0
    CHECK(lat.slot(3, 5, 1) == -1);      // m2 > m1 + 1
    CHECK(lat.block_at(8, 0) == nullptr);
    CHECK(lat.block_at(3, 5) == nullptr);
    CHECK(lat.block_at(3, 2) != nullptr);
}

TEST_CASE("specific label values") {
    // k = 1 holds (m1-m2+1, m2-1), k = 2 holds (m1-m2, m2), k = 3 holds (m1-m2, m2-1)
    const FockLabel f1 = chi_to_fock({5, 2}, 1);
    CHECK(f1.n1 == 4);
    CHECK(f1.n2 == 1);
    const FockLabel f2 = chi_to_fock({5, 2}, 2);
    CHECK(f2.n1 == 3);
    CHECK(f2.n2 == 2);
    const FockLabel f3 = chi_to_fock({5, 2}, 3);
    CHECK(f3.n1 == 3);
    CHECK(f3.n2 == 1);
    // dark slots
    const FockLabel d2 = chi_to_fock({4, 0}, 2);
    CHECK(d2.n1 == 4);
    CHECK(d2.n2 == 0);
    const FockLabel d1 = chi_to_fock({4, 5}, 1);
    CHECK(d1.n1 == 0);
    CHECK(d1.n2 == 4);
}

TEST_CASE("invalid arguments throw") {
    CHECK_THROWS_AS(Lattice(-1), std::invalid_argument);
    CHECK_THROWS_AS(chi_to_fock({4, 0}, 1), std::invalid_argument);
    CHECK_THROWS_AS(chi_to_fock({4, 5}, 3), std::invalid_argument);
    CHECK_THROWS_AS(fock_to_block(-1, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(fock_to_block(0, 0, 4), std::invalid_argument);
}

#include "lambdacav/dressed.hpp"

#include "lambdacav/linalg.hpp"
#include "lambdacav/oracle.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace lambdacav;

namespace {

struct Draw {
    CouplingConfig coupling;
    BlockIndex block;
};

// Randomized but reproducible coupling/block draws covering weak and strong
// drives, positive and negative detunings, and the full excitation range.
std::vector<Draw> coupling_draws(int count, unsigned seed, bool dim3_only) {
    const AtomSpec li = builtin_atom("li6");
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> mu(0.005, 0.12);
    std::uniform_real_distribution<double> mult(-12.0, 12.0);
    std::uniform_int_distribution<int> m1d(1, 45);
    std::vector<Draw> out;
    out.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double d = detuning_from_multiple(li.gamma_bar, mult(rng));
        Draw dr;
        dr.coupling = make_coupling(li, mu(rng), mu(rng), d, d);
        dr.block.m1 = m1d(rng);
        std::uniform_int_distribution<int> m2d(dim3_only ? 1 : 0,
                                               dim3_only ? dr.block.m1 : dr.block.m1 + 1);
        dr.block.m2 = m2d(rng);
        out.push_back(dr);
    }
    return out;
}

CMatrix as_cmatrix(const DenseBlockHamiltonian& h) {
    CMatrix m(h.dim, h.dim);
    for (int i = 0; i < h.dim; ++i)
        for (int j = 0; j < h.dim; ++j) m(i, j) = h.h[static_cast<size_t>(i)][static_cast<size_t>(j)];
    return m;
}

} // namespace

TEST_CASE("closed-form block eigenvalues match a numeric diagonalization") {
    const AtomSpec li = builtin_atom("li6");
    for (const Draw& dr : coupling_draws(60, 2024u, true)) {
        const DressedBlock db = dressed_block(dr.block, dr.coupling, li);
        REQUIRE_FALSE(db.degenerate);
        const auto numeric = hermitian_eigenvalues(as_cmatrix(assemble_block(dr.block, dr.coupling, li)));
        std::vector<double> closed{db.e0, db.e_plus, db.e_minus};
        std::sort(closed.begin(), closed.end());
        const double scale = std::max(1.0, std::abs(numeric.back()));
        for (int i = 0; i < 3; ++i)
            CHECK(std::abs(closed[static_cast<size_t>(i)] - numeric[static_cast<size_t>(i)]) <
                  1e-11 * scale);
    }
}

TEST_CASE("eigenvector rows are orthonormal and diagonalize the block") {
    const AtomSpec li = builtin_atom("li6");
    for (const Draw& dr : coupling_draws(40, 555u, true)) {
        const DressedBlock db = dressed_block(dr.block, dr.coupling, li);
        const auto& o = db.o_matrix;

        for (int r = 0; r < 3; ++r)
            for (int s = 0; s < 3; ++s) {
                double dot = 0.0;
                for (int j = 0; j < 3; ++j)
                    dot += o[static_cast<size_t>(r)][static_cast<size_t>(j)] *
                           o[static_cast<size_t>(s)][static_cast<size_t>(j)];
                CHECK(std::abs(dot - (r == s ? 1.0 : 0.0)) < 1e-12);
            }

        // rows ordered (plus, zero, minus): O H O^T must be diag(E+, E0, E-)
        const DenseBlockHamiltonian h = assemble_block(dr.block, dr.coupling, li);
        const double expected[3] = {db.e_plus, db.e0, db.e_minus};
        const double scale = std::max({1.0, std::abs(db.e_plus), std::abs(db.e_minus)});
        for (int r = 0; r < 3; ++r)
            for (int s = 0; s < 3; ++s) {
                double v = 0.0;
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        v += o[static_cast<size_t>(r)][static_cast<size_t>(i)] *
                             h.h[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                             o[static_cast<size_t>(s)][static_cast<size_t>(j)];
                const double want = r == s ? expected[r] : 0.0;
                CHECK(std::abs(v - want) < 1e-11 * scale);
            }
    }
}

TEST_CASE("splitting accessor agrees with its definition") {
    for (const Draw& dr : coupling_draws(30, 77u, true)) {
        const double delta = dr.coupling.delta13;
        const double nu0 = (dr.block.m1 - dr.block.m2 + 1) * dr.coupling.mu13 * dr.coupling.mu13 +
                           dr.block.m2 * dr.coupling.mu23 * dr.coupling.mu23;
        const double eps =
            epsilon2(dr.block.m1, dr.block.m2, delta, dr.coupling.mu13, dr.coupling.mu23);
        CHECK(eps * eps ==
              doctest::Approx(0.25 * delta * delta + nu0).epsilon(1e-14));
        CHECK(eps >= 0.0);
    }
}

TEST_CASE("dark slots carry their product-state energy") {
    const AtomSpec li = builtin_atom("li6");
    const double d = detuning_from_multiple(li.gamma_bar, 7.0);
    const CouplingConfig c = make_coupling(li, 0.05, 0.02, d, d);
    for (int m1 = 0; m1 <= 20; m1 += 5) {
        // lone level-2 slot |m1, 0; 2>
        const DressedBlock low = dressed_block({m1, 0}, c, li);
        CHECK(low.degenerate);
        CHECK(low.dark_energy ==
              doctest::Approx(li.omega2 + c.omega_field1 * m1).epsilon(1e-14));
        // lone level-1 slot |0, m1; 1>
        const DressedBlock high = dressed_block({m1, m1 + 1}, c, li);
        CHECK(high.degenerate);
        CHECK(high.dark_energy ==
              doctest::Approx(li.omega1 + c.omega_field2 * m1).epsilon(1e-14));
    }
}

TEST_CASE("dark energies hold for unequal detunings too") {
    // the dimension-1 slots never mix, so their energies are exact for any
    // detuning pair; the numeric assembly is the reference here
    const AtomSpec li = builtin_atom("li6");
    const CouplingConfig c = make_coupling(li, 0.05, 0.02,
                                           detuning_from_multiple(li.gamma_bar, 3.0),
                                           detuning_from_multiple(li.gamma_bar, -4.0));
    const DenseBlockHamiltonian low = assemble_block({6, 0}, c, li);
    CHECK(low.dim == 1);
    CHECK(low.h[0][0] == doctest::Approx(li.omega2 + c.omega_field1 * 6).epsilon(1e-14));
    const DenseBlockHamiltonian high = assemble_block({6, 7}, c, li);
    CHECK(high.dim == 1);
    CHECK(high.h[0][0] == doctest::Approx(li.omega1 + c.omega_field2 * 6).epsilon(1e-14));
}

TEST_CASE("vanishing couplings mark the block decoupled") {
    const AtomSpec li = builtin_atom("li6");
    const double d = detuning_from_multiple(li.gamma_bar, 5.0);
    const CouplingConfig c = make_coupling(li, 0.0, 0.0, d, d);
    const DressedBlock db = dressed_block({4, 2}, c, li);
    CHECK(db.decoupled);
    CHECK_FALSE(db.degenerate);
    CHECK(db.eps2 == doctest::Approx(std::abs(d) / 2.0).epsilon(1e-15));
}

TEST_CASE("unequal detunings are rejected by the closed form") {
    const AtomSpec li = builtin_atom("li6");
    const CouplingConfig c = make_coupling(li, 0.03, 0.03, 0.01, 0.02);
    CHECK_THROWS_AS(dressed_block({3, 1}, c, li), std::invalid_argument);
}

TEST_CASE("stored coupling amplitudes match their definitions") {
    const AtomSpec li = builtin_atom("li6");
    for (const Draw& dr : coupling_draws(20, 31u, true)) {
        const DressedBlock db = dressed_block(dr.block, dr.coupling, li);
        CHECK(db.a == doctest::Approx(dr.coupling.mu13 *
                                      std::sqrt(double(dr.block.m1 - dr.block.m2 + 1)))
                          .epsilon(1e-15));
        CHECK(db.c ==
              doctest::Approx(dr.coupling.mu23 * std::sqrt(double(dr.block.m2))).epsilon(1e-15));
        CHECK(db.delta == dr.coupling.delta13);
        CHECK(db.nu0 == doctest::Approx(db.a * db.a + db.c * db.c).epsilon(1e-14));
    }
}

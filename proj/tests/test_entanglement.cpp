#include "lambdacav/entanglement.hpp"

#include "lambdacav/observables.hpp"
#include "lambdacav/propagator.hpp"

#include <doctest.h>

#include <cmath>

using namespace lambdacav;

namespace {

CMatrix pure_state_3() {
    CMatrix rho(3, 3);
    rho(0, 0) = 1.0;
    return rho;
}

CMatrix maximally_mixed(int n) {
    CMatrix rho(n, n);
    for (int i = 0; i < n; ++i) rho(i, i) = 1.0 / n;
    return rho;
}

PacketState evolved_packet(double nbar1, double nbar2, double t, double tail_tol) {
    const AtomSpec li = builtin_atom("li6");
    const double mu = rabi_from_intensity(li.gamma_bar, 3.0);
    const CouplingConfig c = make_coupling(li, mu, mu, 0.0, 0.0);
    const PacketState p0 =
        build_packet(FieldAmplitudes::from_mean_and_phase(nbar1, 0.0, nbar2, 0.0),
                     normalize_gamma({1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}), tail_tol);
    return Evolver(p0.lattice, c, li).evolve(p0, t);
}

} // namespace

TEST_CASE("mixedness measures on reference states") {
    CHECK(linear_entropy(pure_state_3()) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(linear_entropy(maximally_mixed(3)) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(linear_entropy(maximally_mixed(2)) == doctest::Approx(0.5).epsilon(1e-14));

    CHECK(von_neumann_entropy(pure_state_3()) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(von_neumann_entropy(maximally_mixed(3)) ==
          doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(von_neumann_entropy(maximally_mixed(2)) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(von_neumann_entropy(std::vector<double>{0.5, 0.5}) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("entropy guards") {
    CMatrix off(3, 3);
    off(0, 0) = 2.0 / 3.0;
    off(1, 1) = 2.0 / 3.0;
    off(2, 2) = 2.0 / 3.0;
    CHECK_THROWS_AS(linear_entropy(off), std::invalid_argument);     // trace 2
    CHECK_THROWS_AS(linear_entropy(CMatrix(2, 3)), std::invalid_argument);

    // harmless negative rounding of an eigenvalue is clamped ...
    CHECK(von_neumann_entropy(std::vector<double>{1.0 + 1e-11, -1e-11}) ==
          doctest::Approx(0.0).epsilon(1e-9));
    // ... a genuinely negative one is an error
    CHECK_THROWS_AS(von_neumann_entropy(std::vector<double>{1.0, -1e-9}), std::runtime_error);
}

TEST_CASE("spectrum of a reduced state") {
    const PacketState pt = evolved_packet(0.5, 0.5, 120.0, 1e-8);
    const SpectrumResult s = density_spectrum(atomic_rdm(pt).rho);
    double sum = 0.0;
    for (double ev : s.eigenvalues) {
        CHECK(ev > -1e-12);
        sum += ev;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mutual information of product and pure-joint states") {
    const CMatrix a = maximally_mixed(2);
    const CMatrix b = maximally_mixed(3);
    // rhoAB = a (x) b
    CMatrix ab(6, 6);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) ab(3 * i + j, 3 * i + j) = a(i, i) * b(j, j);
    CHECK(mutual_information(a, b, ab) == doctest::Approx(0.0).epsilon(1e-12));

    // joint state pure: I = S_A + S_B with S_A = S_B
    CHECK(mutual_information(a, a, true) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(mutual_information(a, b, false), std::invalid_argument);
    CHECK_THROWS_AS(mutual_information(a, b, CMatrix::identity(5)), std::invalid_argument);
}

TEST_CASE("atom and field carry the same entropy for the pure joint state") {
    const PacketState pt = evolved_packet(0.5, 0.5, 120.0, 1e-8);
    const double s_atom = von_neumann_entropy(atomic_rdm(pt).rho);
    const double s_field = von_neumann_entropy(field_rdm(pt).rho);
    CHECK(s_atom > 0.01);   // actually entangled at this time
    CHECK(std::abs(s_atom - s_field) < 1e-8);
}

TEST_CASE("triangle inequality for the two modes") {
    const PacketState pt = evolved_packet(0.5, 0.5, 120.0, 1e-8);
    const FieldDensity fd = field_rdm(pt);
    const double s1 = von_neumann_entropy(mode_rdm(fd, 1));
    const double s2 = von_neumann_entropy(mode_rdm(fd, 2));
    // the pair (mode1, mode2) is as mixed as the atom it purifies
    const double s12 = von_neumann_entropy(atomic_rdm(pt).rho);
    CHECK(std::abs(s1 - s2) <= s12 + 1e-10);
    CHECK(s12 <= s1 + s2 + 1e-10);
}

TEST_CASE("partial transposition is an involution and detects entanglement") {
    const PacketState p0 = evolved_packet(0.4, 0.3, 0.0, 1e-8);
    const FieldDensity fd0 = field_rdm(p0);
    const FieldDensity twice = partial_transpose_mode2(partial_transpose_mode2(fd0));
    CHECK((twice.rho - fd0.rho).max_abs() == 0.0);

    // separable (product) field state: transpose stays positive up to the
    // dense eigensolver's rounding floor at this dimension (~1e-9)
    CHECK(partial_transpose_min_eigenvalue(fd0) > -1e-8);

    // after evolution the two modes entangle and the transpose goes negative
    const PacketState pt = evolved_packet(0.4, 0.3, 150.0, 1e-8);
    CHECK(partial_transpose_min_eigenvalue(field_rdm(pt)) < -1e-7);
}

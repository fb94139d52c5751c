#include "lambdacav/linalg.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace lambdacav;

namespace {

CMatrix random_hermitian(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i) {
        a(i, i) = u(rng);
        for (int j = i + 1; j < n; ++j) {
            a(i, j) = cplx{u(rng), u(rng)};
            a(j, i) = std::conj(a(i, j));
        }
    }
    return a;
}

} // namespace

TEST_CASE("known eigenvalues of small matrices") {
    CMatrix a(2, 2);
    a(0, 0) = 2.0;
    a(0, 1) = 1.0;
    a(1, 0) = 1.0;
    a(1, 1) = 2.0;
    const auto ev = hermitian_eigenvalues(a);
    REQUIRE(ev.size() == 2);
    CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ev[1] == doctest::Approx(3.0).epsilon(1e-14));

    CMatrix b(2, 2);
    b(0, 0) = 1.0;
    b(0, 1) = cplx{0.0, 1.0};
    b(1, 0) = cplx{0.0, -1.0};
    b(1, 1) = 1.0;
    const auto evb = hermitian_eigenvalues(b);
    CHECK(evb[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(evb[1] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("eigenvalues ascend and sum to the trace") {
    const CMatrix a = random_hermitian(12, 7u);
    const auto ev = hermitian_eigenvalues(a);
    REQUIRE(static_cast<int>(ev.size()) == 12);
    double sum = 0.0;
    for (std::size_t i = 0; i < ev.size(); ++i) {
        sum += ev[i];
        if (i > 0) CHECK(ev[i] >= ev[i - 1]);
    }
    CHECK(sum == doctest::Approx(a.trace().real()).epsilon(1e-12));
}

TEST_CASE("full eigensystem reconstructs the matrix") {
    const CMatrix a = random_hermitian(10, 99u);
    const EigenSystem es = hermitian_eigensystem(a);
    REQUIRE(static_cast<int>(es.eigenvalues.size()) == 10);
    CHECK(es.residual < 1e-11);
    for (std::size_t i = 1; i < es.eigenvalues.size(); ++i)
        CHECK(es.eigenvalues[i] <= es.eigenvalues[i - 1]);   // descending

    // V^dagger V = I
    const CMatrix vhv = es.vectors.adjoint() * es.vectors;
    CMatrix dev = vhv - CMatrix::identity(10);
    CHECK(dev.max_abs() < 1e-12);

    // A = V diag(lambda) V^dagger
    CMatrix lam(10, 10);
    for (int i = 0; i < 10; ++i) lam(i, i) = es.eigenvalues[static_cast<size_t>(i)];
    const CMatrix rebuilt = es.vectors * lam * es.vectors.adjoint();
    CHECK((rebuilt - a).max_abs() < 1e-11);

    // both routines agree (one ascending, one descending)
    const auto asc = hermitian_eigenvalues(a);
    for (int i = 0; i < 10; ++i)
        CHECK(asc[static_cast<size_t>(i)] ==
              doctest::Approx(es.eigenvalues[static_cast<size_t>(9 - i)]).epsilon(1e-12));
}

TEST_CASE("matrix helpers") {
    CMatrix a(2, 3);
    a(0, 0) = cplx{1.0, 2.0};
    a(1, 2) = cplx{0.0, -4.0};
    CHECK(a.max_abs() == doctest::Approx(4.0));
    const CMatrix ad = a.adjoint();
    CHECK(ad.rows() == 3);
    CHECK(ad.cols() == 2);
    CHECK(ad(0, 0) == std::conj(a(0, 0)));
    CHECK(ad(2, 1) == std::conj(a(1, 2)));

    const CMatrix h = random_hermitian(5, 3u);
    CHECK(h.herm_defect() == 0.0);
    CMatrix nh = h;
    nh(0, 1) += cplx{0.0, 1e-3};
    CHECK(nh.herm_defect() == doctest::Approx(1e-3).epsilon(1e-9));
}

TEST_CASE("shape and symmetry violations throw") {
    CMatrix a(2, 3), b(2, 3);
    CHECK_THROWS_AS(a * b, std::invalid_argument);
    CMatrix nh(2, 2);
    nh(0, 1) = 1.0;   // (1,0) left zero: not Hermitian
    CHECK_THROWS_AS(hermitian_eigenvalues(nh), std::invalid_argument);
    CHECK_THROWS_AS(hermitian_eigenvalues(CMatrix(2, 3)), std::invalid_argument);
}

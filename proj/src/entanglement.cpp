#include "lambdacav/entanglement.hpp"

#include <cmath>
#include <stdexcept>

namespace lambdacav {

SpectrumResult density_spectrum(const CMatrix& rho) {
    EigenSystem es = hermitian_eigensystem(rho);
    SpectrumResult r;
    r.eigenvalues = std::move(es.eigenvalues);
    r.residual = es.residual;
    return r;
}

double linear_entropy(const CMatrix& rho) {
    if (rho.rows() != rho.cols())
        throw std::invalid_argument("linear_entropy: density matrix must be square");
    if (std::abs(rho.trace() - cplx{1.0, 0.0}) > 1e-8)
        throw std::invalid_argument("linear_entropy: trace deviates from 1");
    // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    double purity = 0.0;
    for (int i = 0; i < rho.rows(); ++i)
        for (int j = 0; j < rho.cols(); ++j) purity += std::norm(rho(i, j));
    return 1.0 - purity;
}

double von_neumann_entropy(const std::vector<double>& eigenvalues) {
    double s = 0.0;
    for (double lam : eigenvalues) {
        if (lam < -1e-10)
            throw std::runtime_error("von_neumann_entropy: eigenvalue below -1e-10");
        if (lam <= 0.0) continue;
        s -= lam * std::log(lam);
    }
    return s;
}

double von_neumann_entropy(const CMatrix& rho) {
    return von_neumann_entropy(hermitian_eigenvalues(rho));
}

double mutual_information(const CMatrix& rhoA, const CMatrix& rhoB, const CMatrix& rhoAB) {
    if (rhoAB.rows() != rhoA.rows() * rhoB.rows())
        throw std::invalid_argument("mutual_information: joint dimension mismatch");
    return von_neumann_entropy(rhoA) + von_neumann_entropy(rhoB) - von_neumann_entropy(rhoAB);
}

double mutual_information(const CMatrix& rhoA, const CMatrix& rhoB, bool known_pure_joint) {
    if (!known_pure_joint)
        throw std::invalid_argument("mutual_information: pass the joint density or the pure flag");
    return von_neumann_entropy(rhoA) + von_neumann_entropy(rhoB);
}

FieldDensity partial_transpose_mode2(const FieldDensity& fd) {
    FieldDensity out;
    out.d1 = fd.d1;
    out.d2 = fd.d2;
    out.rho = CMatrix(fd.d1 * fd.d2, fd.d1 * fd.d2);
    for (int j = 0; j < fd.d1; ++j)
        for (int k = 0; k < fd.d1; ++k)
            for (int m = 0; m < fd.d2; ++m)
                for (int n = 0; n < fd.d2; ++n)
                    out.rho(out.index(j, m), out.index(k, n)) =
                        fd.rho(fd.index(j, n), fd.index(k, m));
    return out;
}

double partial_transpose_min_eigenvalue(const FieldDensity& fd) {
    const FieldDensity pt = partial_transpose_mode2(fd);
    const std::vector<double> ev = hermitian_eigenvalues(pt.rho);
    return ev.empty() ? 0.0 : ev.front();
}

} // namespace lambdacav

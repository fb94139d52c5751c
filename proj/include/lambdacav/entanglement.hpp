#pragma once

#include "lambdacav/linalg.hpp"
#include "lambdacav/observables.hpp"

namespace lambdacav {

// Descending spectrum with an explicit accuracy residual.
struct SpectrumResult {
    std::vector<double> eigenvalues;
    double residual = 0.0;
};

SpectrumResult density_spectrum(const CMatrix& rho);

// S_L = 1 - Tr(rho^2); throws std::invalid_argument when |Tr rho - 1| > 1e-8.
double linear_entropy(const CMatrix& rho);

// S_VN = -sum lambda ln lambda (natural log); eigenvalues in [-1e-10, 0) are
// clamped to 0, anything more negative throws std::runtime_error.
double von_neumann_entropy(const CMatrix& rho);
double von_neumann_entropy(const std::vector<double>& eigenvalues);

// I = S^A + S^B - S^AB. When the joint state is known to be pure, pass
// known_pure_joint = true and rhoAB is ignored (S^AB = 0); otherwise rhoAB
// must have dimension dim(A) * dim(B).
double mutual_information(const CMatrix& rhoA, const CMatrix& rhoB, const CMatrix& rhoAB);
double mutual_information(const CMatrix& rhoA, const CMatrix& rhoB, bool known_pure_joint);

// Transpose of the second mode: out_{(j,m),(k,n)} = rho_{(j,n),(k,m)}.
FieldDensity partial_transpose_mode2(const FieldDensity& fd);

// Smallest eigenvalue of the mode-2 partial transpose; a negative value
// witnesses mode-mode entanglement.
double partial_transpose_min_eigenvalue(const FieldDensity& fd);

} // namespace lambdacav

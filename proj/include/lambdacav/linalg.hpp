#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace lambdacav {

using cplx = std::complex<double>;

// Dense complex matrix, row-major. Small-to-medium sizes only (reduced
// density matrices, partial transposes); no BLAS, fully deterministic.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("CMatrix: negative dimension");
    }
    static CMatrix identity(int n) {
        CMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    cplx trace() const {
        cplx t = 0.0;
        for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }
    double herm_defect() const;   // max |a_ij - conj(a_ji)|
    double max_abs() const;

    CMatrix adjoint() const;
    CMatrix operator*(const CMatrix& rhs) const;
    CMatrix operator-(const CMatrix& rhs) const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations,
// off-diagonal Frobenius norm stop at 1e-13 (relative to the matrix scale).
// Deterministic sweep order; ascending eigenvalues.
std::vector<double> hermitian_eigenvalues(const CMatrix& a);

struct EigenSystem {
    std::vector<double> eigenvalues;   // descending
    CMatrix vectors;                   // column i pairs with eigenvalues[i]
    double residual;                   // max component of A v - lambda v over pairs
};

// Full eigensystem via the same cyclic Jacobi, with eigenvector accumulation
// and an explicit residual check.
EigenSystem hermitian_eigensystem(const CMatrix& a);

} // namespace lambdacav

#include "lambdacav/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lambdacav {

double CMatrix::herm_defect() const {
    double d = 0.0;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return d;
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

CMatrix CMatrix::operator*(const CMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("CMatrix: shape mismatch in product");
    CMatrix r(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const cplx aik = (*this)(i, k);
            if (aik == cplx(0.0)) continue;
            for (int j = 0; j < rhs.cols_; ++j) r(i, j) += aik * rhs(k, j);
        }
    return r;
}

CMatrix CMatrix::operator-(const CMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("CMatrix: shape mismatch");
    CMatrix r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j) - rhs(i, j);
    return r;
}

namespace {

double off_diagonal_norm(const CMatrix& a) {
    double s = 0.0;
    const int n = a.rows();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s += std::norm(a(i, j));
    return std::sqrt(2.0 * s);
}

// One cyclic Jacobi pass over all (p,q); rotations chosen to annihilate a_pq.
// Complex-Hermitian rotation: unitary J with J(p,p)=c, J(p,q)=s, J(q,p)=-conj(s), J(q,q)=c.
void jacobi_sweep(CMatrix& a, CMatrix* v) {
    const int n = a.rows();
    for (int p = 0; p < n; ++p) {
        for (int q = p + 1; q < n; ++q) {
            const cplx apq = a(p, q);
            const double abs_apq = std::abs(apq);
            if (abs_apq == 0.0) continue;
            const double app = a(p, p).real();
            const double aqq = a(q, q).real();
            const double tau = (aqq - app) / (2.0 * abs_apq);
            const double t = (tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                         : 1.0 / (tau - std::sqrt(1.0 + tau * tau)));
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const cplx s = (t * c) * (apq / abs_apq);

            for (int k = 0; k < n; ++k) {
                const cplx akp = a(k, p);
                const cplx akq = a(k, q);
                a(k, p) = c * akp - std::conj(s) * akq;
                a(k, q) = s * akp + c * akq;
            }
            for (int k = 0; k < n; ++k) {
                const cplx apk = a(p, k);
                const cplx aqk = a(q, k);
                a(p, k) = c * apk - s * aqk;
                a(q, k) = std::conj(s) * apk + c * aqk;
            }
            a(p, q) = 0.0;
            a(q, p) = 0.0;
            a(p, p) = cplx(a(p, p).real(), 0.0);
            a(q, q) = cplx(a(q, q).real(), 0.0);
            if (v) {
                for (int k = 0; k < n; ++k) {
                    const cplx vkp = (*v)(k, p);
                    const cplx vkq = (*v)(k, q);
                    (*v)(k, p) = c * vkp - std::conj(s) * vkq;
                    (*v)(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
}

std::vector<double> jacobi_diagonalize(CMatrix& a, CMatrix* v) {
    const int n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("jacobi: matrix not square");
    if (a.herm_defect() > 1e-10 * std::max(1.0, a.max_abs()))
        throw std::invalid_argument("jacobi: matrix not Hermitian");
    // symmetrize to kill representation noise below the tolerance
    for (int i = 0; i < n; ++i) {
        a(i, i) = cplx(a(i, i).real(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            const cplx m = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = m;
            a(j, i) = std::conj(m);
        }
    }
    const double scale = std::max(1.0, a.max_abs());
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm(a) <= 1e-13 * scale) break;
        jacobi_sweep(a, v);
    }
    std::vector<double> lam(n);
    for (int i = 0; i < n; ++i) lam[i] = a(i, i).real();
    return lam;
}

} // namespace

std::vector<double> hermitian_eigenvalues(const CMatrix& a) {
    CMatrix work = a;
    std::vector<double> lam = jacobi_diagonalize(work, nullptr);
    std::sort(lam.begin(), lam.end());
    return lam;
}

EigenSystem hermitian_eigensystem(const CMatrix& a) {
    const int n = a.rows();
    CMatrix work = a;
    CMatrix v = CMatrix::identity(n);
    std::vector<double> lam = jacobi_diagonalize(work, &v);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return lam[i] > lam[j]; });

    EigenSystem es;
    es.eigenvalues.resize(n);
    es.vectors = CMatrix(n, n);
    for (int c = 0; c < n; ++c) {
        es.eigenvalues[c] = lam[order[c]];
        for (int r = 0; r < n; ++r) es.vectors(r, c) = v(r, order[c]);
    }
    es.residual = 0.0;
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < n; ++r) {
            cplx Av = 0.0;
            for (int k = 0; k < n; ++k) Av += a(r, k) * es.vectors(k, c);
            es.residual = std::max(es.residual, std::abs(Av - es.eigenvalues[c] * es.vectors(r, c)));
        }
    }
    return es;
}

} // namespace lambdacav

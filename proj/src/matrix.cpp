#include "sepsimplex/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sepsimplex/error.hpp"

namespace sepsimplex {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::wrong_dimension: return "wrong dimension";
        case ErrorKind::not_hermitian: return "not Hermitian";
        case ErrorKind::bad_trace: return "trace not 1";
        case ErrorKind::negative_eigenvalue: return "negative eigenvalue";
        case ErrorKind::not_normalized: return "not normalized";
        case ErrorKind::not_rank_one: return "not rank one";
        case ErrorKind::out_of_range: return "out of range";
        case ErrorKind::not_orthogonal: return "not orthogonal";
        case ErrorKind::incomplete: return "incomplete resolution of identity";
        case ErrorKind::wrong_count: return "wrong count";
        case ErrorKind::not_commuting: return "not commuting";
        case ErrorKind::malformed_input: return "malformed input";
        case ErrorKind::invariant_violation: return "invariant violation";
        case ErrorKind::iteration_limit: return "iteration limit";
    }
    return "unknown";
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<cplx> row_major)
    : dim_(dim), data_(std::move(row_major)) {
    if (data_.size() != dim_ * dim_) {
        throw Error(ErrorKind::wrong_dimension,
                    "expected " + std::to_string(dim_ * dim_) + " entries, got " +
                        std::to_string(data_.size()));
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
    ComplexMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> v) {
    ComplexMatrix m(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (o.dim_ != dim_) throw Error(ErrorKind::wrong_dimension, "matrix sum");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (o.dim_ != dim_) throw Error(ErrorKind::wrong_dimension, "matrix difference");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& z : data_) z *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw Error(ErrorKind::wrong_dimension, "matrix product");
    const std::size_t d = a.dim();
    ComplexMatrix c(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < d; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

CVector ComplexMatrix::apply(std::span<const cplx> v) const {
    if (v.size() != dim_) throw Error(ErrorKind::wrong_dimension, "matrix-vector product");
    CVector r(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw Error(ErrorKind::wrong_dimension, "comparison");
    double m = 0.0;
    auto da = a.data();
    auto db = b.data();
    for (std::size_t i = 0; i < da.size(); ++i) m = std::max(m, std::abs(da[i] - db[i]));
    return m;
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double abs_tol) {
    return a.dim() == b.dim() && max_abs_diff(a, b) <= abs_tol;
}

double hermiticity_defect(const ComplexMatrix& h) {
    double m = 0.0;
    for (std::size_t i = 0; i < h.dim(); ++i)
        for (std::size_t j = i; j < h.dim(); ++j)
            m = std::max(m, std::abs(h(i, j) - std::conj(h(j, i))));
    return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t da = a.dim(), db = b.dim();
    ComplexMatrix r(da * db);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t m = 0; m < da; ++m) {
            const cplx s = a(i, m);
            for (std::size_t j = 0; j < db; ++j)
                for (std::size_t n = 0; n < db; ++n) r(i * db + j, m * db + n) = s * b(j, n);
        }
    return r;
}

CVector kron(std::span<const cplx> a, std::span<const cplx> b) {
    CVector r(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i * b.size() + j] = a[i] * b[j];
    return r;
}

double norm(std::span<const cplx> v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) throw Error(ErrorKind::wrong_dimension, "inner product");
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Zero a(p,q) with the unitary G = diag-phase(q) * real Givens(p,q):
// first rotate the phase of column/row q so a(p,q) becomes real, then
// apply the classical Jacobi rotation. V accumulates G.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const std::size_t d = a.dim();
    const cplx apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;

    const cplx phase = std::conj(apq) / mag;  // e^{-i theta}
    for (std::size_t k = 0; k < d; ++k) {
        a(k, q) *= phase;
        v(k, q) *= phase;
    }
    for (std::size_t k = 0; k < d; ++k) a(q, k) *= std::conj(phase);

    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double theta = (aqq - app) / (2.0 * mag);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    for (std::size_t k = 0; k < d; ++k) {
        const cplx akp = a(k, p), akq = a(k, q);
        a(k, p) = c * akp - s * akq;
        a(k, q) = s * akp + c * akq;
        const cplx vkp = v(k, p), vkq = v(k, q);
        v(k, p) = c * vkp - s * vkq;
        v(k, q) = s * vkp + c * vkq;
    }
    for (std::size_t k = 0; k < d; ++k) {
        const cplx apk = a(p, k), aqk = a(q, k);
        a(p, k) = c * apk - s * aqk;
        a(q, k) = s * apk + c * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = app - t * mag;
    a(q, q) = aqq + t * mag;
}

}  // namespace

HermitianEigen hermitian_eigen(const ComplexMatrix& h, double tol) {
    const std::size_t d = h.dim();
    const double scale = h.max_abs();
    const double defect = hermiticity_defect(h);
    if (defect > tol * std::max(1.0, scale)) {
        throw Error(ErrorKind::not_hermitian,
                    "max |h_ij - conj(h_ji)| = " + std::to_string(defect), defect);
    }

    // symmetrize so the rotations act on an exactly Hermitian matrix
    ComplexMatrix a(d);
    for (std::size_t i = 0; i < d; ++i) {
        a(i, i) = h(i, i).real();
        for (std::size_t j = i + 1; j < d; ++j) {
            a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
            a(j, i) = std::conj(a(i, j));
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(d);

    const double target = 1e-14 * a.frobenius_norm();
    constexpr int kMaxSweeps = 100;
    int sweep = 0;
    while (off_diagonal_norm(a) > target) {
        if (++sweep > kMaxSweeps) {
            throw Error(ErrorKind::iteration_limit, "Jacobi did not converge in 100 sweeps",
                        off_diagonal_norm(a));
        }
        for (std::size_t p = 0; p + 1 < d; ++p)
            for (std::size_t q = p + 1; q < d; ++q) jacobi_rotate(a, v, p, q);
    }

    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

    HermitianEigen out{std::vector<double>(d), ComplexMatrix(d)};
    for (std::size_t k = 0; k < d; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < d; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

std::vector<double> hermitian_spectrum(const ComplexMatrix& h, double tol) {
    return hermitian_eigen(h, tol).values;
}

}  // namespace sepsimplex

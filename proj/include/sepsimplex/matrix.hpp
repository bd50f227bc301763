#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace sepsimplex {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

// Dense square complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
    ComplexMatrix(std::size_t dim, std::vector<cplx> row_major);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> diag);
    // |v><v|
    static ComplexMatrix outer(std::span<const cplx> v);

    std::size_t dim() const noexcept { return dim_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

    std::span<const cplx> data() const noexcept { return data_; }

    cplx trace() const;
    ComplexMatrix adjoint() const;
    double frobenius_norm() const;
    double max_abs() const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

    CVector apply(std::span<const cplx> v) const;

private:
    std::size_t dim_ = 0;
    std::vector<cplx> data_;
};

// Entrywise max |a_ij - b_ij|; dimensions must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double abs_tol);

// max |h_ij - conj(h_ji)|
double hermiticity_defect(const ComplexMatrix& h);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
CVector kron(std::span<const cplx> a, std::span<const cplx> b);

double norm(std::span<const cplx> v);
cplx dot(std::span<const cplx> a, std::span<const cplx> b);  // <a|b>

struct HermitianEigen {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // column k belongs to values[k]
};

// Cyclic complex Jacobi. Throws not_hermitian if the defect exceeds
// tol * max(1, max|h_ij|).
HermitianEigen hermitian_eigen(const ComplexMatrix& h, double tol = 1e-9);
std::vector<double> hermitian_spectrum(const ComplexMatrix& h, double tol = 1e-9);

}  // namespace sepsimplex

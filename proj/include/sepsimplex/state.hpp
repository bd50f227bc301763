#pragma once

#include <cstddef>

#include "sepsimplex/error.hpp"
#include "sepsimplex/matrix.hpp"

namespace sepsimplex {

// Composite index for |i> (x) |j> on C^n (x) C^n is i*n + j everywhere.
inline std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) { return i * n + j; }

class PureState {
public:
    // Throws not_normalized if | ||v|| - 1 | > tol, wrong_dimension if size != n^2.
    PureState(std::size_t n, CVector amplitudes, double tol = kDefaultTol);

    std::size_t n() const noexcept { return n_; }
    std::span<const cplx> amplitudes() const noexcept { return amplitudes_; }
    ComplexMatrix projector() const { return ComplexMatrix::outer(amplitudes_); }

private:
    std::size_t n_;
    CVector amplitudes_;
};

// Hermitian, trace one, positive semidefinite n^2 x n^2 matrix. Only
// constructible through validate_density, so holding one means the checks
// passed at the tolerance used there.
class DensityMatrix {
public:
    std::size_t n() const noexcept { return n_; }
    const ComplexMatrix& matrix() const noexcept { return m_; }
    double min_eigenvalue() const noexcept { return min_eig_; }

private:
    friend DensityMatrix validate_density(ComplexMatrix m, std::size_t n, double tol);
    DensityMatrix(std::size_t n, ComplexMatrix m, double min_eig)
        : n_(n), m_(std::move(m)), min_eig_(min_eig) {}

    std::size_t n_;
    ComplexMatrix m_;
    double min_eig_;
};

DensityMatrix validate_density(ComplexMatrix m, std::size_t n, double tol = kDefaultTol);

// I / n^2
DensityMatrix maximally_mixed(std::size_t n);

enum class Side { first, second };

ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::size_t n, Side side = Side::second);

struct PptResult {
    bool ppt;
    double min_pt_eigenvalue;
};

PptResult is_ppt(const DensityMatrix& rho, double tol = kDefaultTol);
// Same test on a raw Hermitian matrix, for blocks that are not trace one.
PptResult is_ppt(const ComplexMatrix& h, std::size_t n, double tol = kDefaultTol);

// alpha * P + (1 - alpha) * I / n^2. P must be rank one.
DensityMatrix pencil_state(const DensityMatrix& p, double alpha, double tol = kDefaultTol);

}  // namespace sepsimplex

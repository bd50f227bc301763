#include "sepsimplex/state.hpp"

#include <cmath>
#include <string>

namespace sepsimplex {

namespace {

void require_square_of(std::size_t dim, std::size_t n) {
    if (n == 0 || dim != n * n) {
        throw Error(ErrorKind::wrong_dimension,
                    "matrix dim " + std::to_string(dim) + " is not n^2 for n = " + std::to_string(n),
                    static_cast<double>(dim));
    }
}

}  // namespace

PureState::PureState(std::size_t n, CVector amplitudes, double tol)
    : n_(n), amplitudes_(std::move(amplitudes)) {
    require_square_of(amplitudes_.size(), n_);
    const double nrm = norm(amplitudes_);
    if (std::abs(nrm - 1.0) > tol) {
        throw Error(ErrorKind::not_normalized, "norm = " + std::to_string(nrm), nrm);
    }
}

DensityMatrix validate_density(ComplexMatrix m, std::size_t n, double tol) {
    require_square_of(m.dim(), n);
    const double defect = hermiticity_defect(m);
    if (defect > tol) {
        throw Error(ErrorKind::not_hermitian, "max |rho_ij - conj(rho_ji)| = " + std::to_string(defect),
                    defect);
    }
    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > tol) {
        throw Error(ErrorKind::bad_trace, "trace = " + std::to_string(tr), tr);
    }
    const auto spec = hermitian_spectrum(m, tol);
    const double min_eig = spec.front();
    if (min_eig < -tol) {
        throw Error(ErrorKind::negative_eigenvalue, "min eigenvalue = " + std::to_string(min_eig),
                    min_eig);
    }
    return DensityMatrix(n, std::move(m), min_eig);
}

DensityMatrix maximally_mixed(std::size_t n) {
    return validate_density(ComplexMatrix::identity(n * n) * cplx(1.0 / static_cast<double>(n * n)), n);
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::size_t n, Side side) {
    require_square_of(rho.dim(), n);
    ComplexMatrix out(rho.dim());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                    // <ij|rho^T_B|kl> = <il|rho|kj>,  <ij|rho^T_A|kl> = <kj|rho|il>
                    const cplx v = side == Side::second ? rho(pair_index(n, i, l), pair_index(n, k, j))
                                                        : rho(pair_index(n, k, j), pair_index(n, i, l));
                    out(pair_index(n, i, j), pair_index(n, k, l)) = v;
                }
    return out;
}

PptResult is_ppt(const ComplexMatrix& h, std::size_t n, double tol) {
    const auto spec = hermitian_spectrum(partial_transpose(h, n), tol);
    return {spec.front() >= -tol, spec.front()};
}

PptResult is_ppt(const DensityMatrix& rho, double tol) { return is_ppt(rho.matrix(), rho.n(), tol); }

DensityMatrix pencil_state(const DensityMatrix& p, double alpha, double tol) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw Error(ErrorKind::out_of_range, "alpha = " + std::to_string(alpha) + " outside [0,1]", alpha);
    }
    const auto spec = hermitian_spectrum(p.matrix(), tol);
    if (spec.size() >= 2 && spec[spec.size() - 2] > tol) {
        throw Error(ErrorKind::not_rank_one,
                    "second-largest eigenvalue = " + std::to_string(spec[spec.size() - 2]),
                    spec[spec.size() - 2]);
    }
    const std::size_t d = p.matrix().dim();
    ComplexMatrix m = p.matrix() * cplx(alpha);
    const double mix = (1.0 - alpha) / static_cast<double>(d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) += mix;
    return validate_density(std::move(m), p.n(), tol);
}

}  // namespace sepsimplex

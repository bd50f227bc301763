#include "sepsimplex/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

namespace sepsimplex {

namespace {

bool is_unitary(const ComplexMatrix& u, double tol) {
    return max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.dim())) <= tol;
}

// Multiplies column k so that its largest-magnitude entry is real positive;
// returns the applied phase.
cplx canonicalize_column(ComplexMatrix& m, std::size_t k) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < m.dim(); ++i)
        if (std::abs(m(i, k)) > std::abs(m(best, k)) + 1e-13) best = i;
    const double mag = std::abs(m(best, k));
    if (mag == 0.0) return 1.0;
    const cplx phase = std::conj(m(best, k)) / mag;
    for (std::size_t i = 0; i < m.dim(); ++i) m(i, k) *= phase;
    m(best, k) = mag;
    return phase;
}

// Replaces column k of u by a unit vector orthogonal to columns [0, k).
void complete_column(ComplexMatrix& u, std::size_t k) {
    const std::size_t d = u.dim();
    for (std::size_t e = 0; e < d; ++e) {
        CVector v(d);
        v[e] = 1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t j = 0; j < k; ++j) {
                cplx proj = 0.0;
                for (std::size_t i = 0; i < d; ++i) proj += std::conj(u(i, j)) * v[i];
                for (std::size_t i = 0; i < d; ++i) v[i] -= proj * u(i, j);
            }
        const double nv = norm(v);
        if (nv > 0.5) {
            for (std::size_t i = 0; i < d; ++i) u(i, k) = v[i] / nv;
            return;
        }
    }
    throw Error(ErrorKind::invariant_violation, "could not complete orthonormal basis");
}

struct Svd {
    std::vector<double> sigma;  // descending
    ComplexMatrix u;
    ComplexMatrix v;  // c = u diag(sigma) v^dagger
};

// One-sided (Hestenes) Jacobi: orthogonalize the columns of c by right
// unitary rotations.
Svd jacobi_svd(const ComplexMatrix& c) {
    const std::size_t d = c.dim();
    ComplexMatrix w = c;
    ComplexMatrix v = ComplexMatrix::identity(d);

    constexpr int kMaxSweeps = 60;
    for (int sweep = 0;; ++sweep) {
        if (sweep == kMaxSweeps) throw Error(ErrorKind::iteration_limit, "one-sided Jacobi SVD");
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < d; ++p)
            for (std::size_t q = p + 1; q < d; ++q) {
                double alpha = 0.0, beta = 0.0;
                cplx gamma = 0.0;
                for (std::size_t i = 0; i < d; ++i) {
                    alpha += std::norm(w(i, p));
                    beta += std::norm(w(i, q));
                    gamma += std::conj(w(i, p)) * w(i, q);
                }
                const double g = std::abs(gamma);
                if (g == 0.0 || g <= 1e-15 * std::sqrt(alpha * beta)) continue;
                rotated = true;

                const cplx phase = std::conj(gamma) / g;
                for (std::size_t i = 0; i < d; ++i) {
                    w(i, q) *= phase;
                    v(i, q) *= phase;
                }
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;
                for (std::size_t i = 0; i < d; ++i) {
                    const cplx wp = w(i, p), wq = w(i, q);
                    w(i, p) = cs * wp - sn * wq;
                    w(i, q) = sn * wp + cs * wq;
                    const cplx vp = v(i, p), vq = v(i, q);
                    v(i, p) = cs * vp - sn * vq;
                    v(i, q) = sn * vp + cs * vq;
                }
            }
        if (!rotated) break;
    }

    std::vector<double> sig(d);
    for (std::size_t k = 0; k < d; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < d; ++i) s += std::norm(w(i, k));
        sig[k] = std::sqrt(s);
    }
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return sig[x] > sig[y]; });

    Svd out{std::vector<double>(d), ComplexMatrix(d), ComplexMatrix(d)};
    const double smax = d ? sig[order[0]] : 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        const std::size_t src = order[k];
        out.sigma[k] = sig[src];
        for (std::size_t i = 0; i < d; ++i) out.v(i, k) = v(i, src);
        if (sig[src] > 1e-14 * smax && sig[src] > 0.0) {
            for (std::size_t i = 0; i < d; ++i) out.u(i, k) = w(i, src) / sig[src];
        } else {
            complete_column(out.u, k);
        }
    }
    return out;
}

}  // namespace

SchmidtDecomposition SchmidtDecomposition::from_coefficients(std::vector<double> lambdas, double tol) {
    SchmidtDecomposition sd;
    sd.n = lambdas.size();
    sd.lambdas = std::move(lambdas);
    sd.basis_a = ComplexMatrix::identity(sd.n);
    sd.basis_b = ComplexMatrix::identity(sd.n);
    sd.check(tol);
    return sd;
}

CVector SchmidtDecomposition::reconstruct() const {
    CVector psi(n * n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                psi[pair_index(n, i, j)] += lambdas[k] * basis_a(i, k) * basis_b(j, k);
    return psi;
}

CVector SchmidtDecomposition::schmidt_basis_vector() const {
    CVector psi(n * n);
    for (std::size_t k = 0; k < n; ++k) psi[pair_index(n, k, k)] = lambdas[k];
    return psi;
}

ComplexMatrix SchmidtDecomposition::local_unitary() const { return kron(basis_a, basis_b); }

void SchmidtDecomposition::check(double tol) const {
    if (lambdas.size() != n || basis_a.dim() != n || basis_b.dim() != n || n == 0) {
        throw Error(ErrorKind::invariant_violation, "Schmidt decomposition has inconsistent sizes");
    }
    double sq = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (lambdas[k] < 0.0) throw Error(ErrorKind::invariant_violation, "negative Schmidt coefficient", lambdas[k]);
        if (k > 0 && lambdas[k] > lambdas[k - 1])
            throw Error(ErrorKind::invariant_violation, "Schmidt coefficients not descending");
        sq += lambdas[k] * lambdas[k];
    }
    if (std::abs(sq - 1.0) > tol)
        throw Error(ErrorKind::invariant_violation, "sum of squared Schmidt coefficients = " + std::to_string(sq), sq);
    if (!is_unitary(basis_a, tol) || !is_unitary(basis_b, tol))
        throw Error(ErrorKind::invariant_violation, "Schmidt basis not unitary");
}

SchmidtDecomposition schmidt_decompose(const PureState& psi, double tol) {
    const std::size_t n = psi.n();
    ComplexMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c(i, j) = psi.amplitudes()[pair_index(n, i, j)];

    Svd svd = jacobi_svd(c);

    // c = sum_k sigma_k u_k v_k^dagger, so the second-factor vectors are conj(v_k)
    SchmidtDecomposition sd;
    sd.n = n;
    sd.lambdas = svd.sigma;
    sd.basis_a = std::move(svd.u);
    sd.basis_b = ComplexMatrix(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) sd.basis_b(i, k) = std::conj(svd.v(i, k));

    // deterministic phases: largest entry of a_k real positive, b_k absorbs
    // the compensating phase (a_k (x) b_k is unchanged)
    for (std::size_t k = 0; k < n; ++k) {
        const cplx ph = canonicalize_column(sd.basis_a, k);
        if (sd.lambdas[k] > 0.0) {
            for (std::size_t i = 0; i < n; ++i) sd.basis_b(i, k) /= ph;
        } else {
            canonicalize_column(sd.basis_b, k);
        }
    }

    sd.check(tol);
    const CVector back = sd.reconstruct();
    double resid = 0.0;
    for (std::size_t i = 0; i < back.size(); ++i) resid = std::max(resid, std::abs(back[i] - psi.amplitudes()[i]));
    if (resid > tol) throw Error(ErrorKind::invariant_violation, "Schmidt reconstruction residual", resid);
    return sd;
}

PptThreshold ppt_threshold(const SchmidtDecomposition& sd) {
    const double m = sd.n >= 2 ? sd.lambdas[0] * sd.lambdas[1] : 0.0;
    const double n2 = static_cast<double>(sd.n * sd.n);
    return {m, 1.0 / (1.0 + n2 * m)};
}

BoundaryScan ppt_boundary_scan(const PureState& psi, double tol) {
    const DensityMatrix p = validate_density(psi.projector(), psi.n(), tol);
    auto min_pt = [&](double alpha) { return is_ppt(pencil_state(p, alpha, tol), tol).min_pt_eigenvalue; };

    if (min_pt(1.0) >= -tol) return {1.0, true};

    std::vector<std::pair<double, double>> samples;
    double lo = 0.0, hi = 1.0;
    constexpr int kIterations = 60;
    for (int it = 0; it < kIterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f = min_pt(mid);
        samples.emplace_back(mid, f);
        (f >= 0.0 ? lo : hi) = mid;
    }

    std::sort(samples.begin(), samples.end());
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (samples[i].second > samples[i - 1].second + 1e-12) {
            throw Error(ErrorKind::invariant_violation,
                        "min PT eigenvalue not monotone along the pencil near alpha = " +
                            std::to_string(samples[i].first),
                        samples[i].second - samples[i - 1].second);
        }
    }
    return {0.5 * (lo + hi), false};
}

}  // namespace sepsimplex

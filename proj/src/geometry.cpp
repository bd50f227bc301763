#include "sepsimplex/geometry.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sepsimplex/lp.hpp"
#include "sepsimplex/pencil.hpp"

namespace sepsimplex {

ComplexMatrix Simplex::state_at(std::span<const double> beta) const {
    if (beta.size() != projectors.size()) throw Error(ErrorKind::wrong_dimension, "barycentric vector length");
    ComplexMatrix m(n * n);
    for (std::size_t k = 0; k < beta.size(); ++k) m += projectors[k].matrix() * cplx(beta[k]);
    return m;
}

CVector ray_of(const ComplexMatrix& projector) {
    std::size_t col = 0;
    for (std::size_t j = 1; j < projector.dim(); ++j)
        if (projector(j, j).real() > projector(col, col).real()) col = j;
    const double pjj = projector(col, col).real();
    if (!(pjj > 0.0)) throw Error(ErrorKind::not_rank_one, "projector has empty diagonal");
    CVector v(projector.dim());
    const double scale = 1.0 / std::sqrt(pjj);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = projector(i, col) * scale;
    return v;
}

Simplex simplex_from_projectors(const std::vector<ComplexMatrix>& ps, std::size_t n, double tol) {
    const std::size_t d = n * n;
    if (ps.empty() || ps.size() > d) {
        throw Error(ErrorKind::wrong_count,
                    "expected " + std::to_string(d) + " projectors, got " + std::to_string(ps.size()),
                    static_cast<double>(ps.size()));
    }
    Simplex s;
    s.n = n;
    for (std::size_t m = 0; m < ps.size(); ++m) {
        DensityMatrix p = validate_density(ps[m], n, tol);
        const auto spec = hermitian_spectrum(p.matrix(), tol);
        if (spec.size() >= 2 && spec[spec.size() - 2] > tol) {
            throw Error(ErrorKind::not_rank_one,
                        "projector " + std::to_string(m) + " second eigenvalue " + std::to_string(spec[spec.size() - 2]),
                        spec[spec.size() - 2]);
        }
        s.rays.push_back(ray_of(p.matrix()));
        s.projectors.push_back(std::move(p));
    }
    double worst = 0.0;
    for (std::size_t m = 0; m < ps.size(); ++m)
        for (std::size_t k = m + 1; k < ps.size(); ++k)
            worst = std::max(worst, (s.projectors[m].matrix() * s.projectors[k].matrix()).max_abs());
    if (worst > tol) throw Error(ErrorKind::not_orthogonal, "max |P_m P_k| = " + std::to_string(worst), worst);

    ComplexMatrix total(d);
    for (const auto& p : s.projectors) total += p.matrix();
    const double gap = max_abs_diff(total, ComplexMatrix::identity(d));
    if (gap > tol) throw Error(ErrorKind::incomplete, "max |sum P_m - I| = " + std::to_string(gap), gap);
    if (s.projectors.size() != d) throw Error(ErrorKind::wrong_count, "projector count", static_cast<double>(ps.size()));
    return s;
}

Simplex simplex_from_rays(const std::vector<CVector>& rays, std::size_t n, double tol) {
    std::vector<ComplexMatrix> ps;
    ps.reserve(rays.size());
    for (const auto& r : rays) ps.push_back(ComplexMatrix::outer(PureState(n, r, tol).amplitudes()));
    Simplex s = simplex_from_projectors(ps, n, tol);
    s.rays = rays;
    return s;
}

Simplex computational_simplex(std::size_t n) {
    std::vector<CVector> rays;
    for (std::size_t m = 0; m < n * n; ++m) {
        CVector v(n * n);
        v[m] = 1.0;
        rays.push_back(std::move(v));
    }
    return simplex_from_rays(rays, n);
}

Simplex bell_simplex(std::size_t n) {
    std::vector<CVector> rays;
    const double amp = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t a = 0; a < n; ++a) {
            CVector v(n * n);
            for (std::size_t j = 0; j < n; ++j) {
                const double angle = 2.0 * std::numbers::pi * static_cast<double>((a * j) % n) / static_cast<double>(n);
                v[pair_index(n, j, (j + b) % n)] = std::polar(amp, angle);
            }
            rays.push_back(std::move(v));
        }
    return simplex_from_rays(rays, n);
}

std::vector<double> barycentric(const DensityMatrix& rho, const Simplex& s, double tol) {
    if (rho.n() != s.n) throw Error(ErrorKind::wrong_dimension, "state and simplex have different n");
    double worst = 0.0;
    std::vector<double> beta;
    beta.reserve(s.projectors.size());
    for (const auto& p : s.projectors) {
        const ComplexMatrix rp = rho.matrix() * p.matrix();
        const ComplexMatrix pr = p.matrix() * rho.matrix();
        worst = std::max(worst, max_abs_diff(rp, pr));
        beta.push_back(pr.trace().real());
    }
    if (worst > tol) {
        throw Error(ErrorKind::not_commuting, "max |[rho, P_m]| = " + std::to_string(worst), worst);
    }
    return beta;
}

double ApproxSet::alpha_min() const { return *std::min_element(alphas.begin(), alphas.end()); }

std::vector<std::vector<double>> approx_set_vertices(std::size_t n, std::span<const double> alphas) {
    const std::size_t d = n * n;
    if (alphas.size() != d) throw Error(ErrorKind::wrong_dimension, "need one alpha per vertex");
    std::vector<std::vector<double>> v;
    v.reserve(2 * d);
    for (std::size_t m = 0; m < d; ++m) {
        const double rest = (1.0 - alphas[m]) / static_cast<double>(d);
        std::vector<double> x(d, rest);
        x[m] = alphas[m] + rest;
        v.push_back(std::move(x));
    }
    for (std::size_t m = 0; m < d; ++m) {
        std::vector<double> x(d, 1.0 / static_cast<double>(d - 1));
        x[m] = 0.0;
        v.push_back(std::move(x));
    }
    return v;
}

ApproxSet approx_set(const Simplex& s, const std::optional<std::vector<double>>& alphas) {
    if (s.n < 2) throw Error(ErrorKind::out_of_range, "approximation set needs n >= 2");
    ApproxSet out;
    out.simplex = s;
    if (alphas) {
        out.alphas = *alphas;
    } else {
        for (const auto& ray : s.rays) out.alphas.push_back(ppt_threshold(schmidt_decompose(PureState(s.n, ray))).alpha);
    }
    for (double a : out.alphas)
        if (!(a > 0.0 && a <= 1.0)) throw Error(ErrorKind::out_of_range, "alpha " + std::to_string(a) + " outside (0,1]", a);
    out.vertices = approx_set_vertices(s.n, out.alphas);
    return out;
}

namespace {

// Continued-fraction convergents until |x - p/q| <= tol.
mpq_class rationalize(double x, double tol = 1e-12) {
    mpq_class target(x);  // exact binary value
    mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    mpq_class rem = target;
    for (int it = 0; it < 200; ++it) {
        mpz_class a;
        mpz_fdiv_q(a.get_mpz_t(), rem.get_num_mpz_t(), rem.get_den_mpz_t());
        mpz_class h2 = a * h1 + h0, k2 = a * k1 + k0;
        h0 = h1; h1 = h2; k0 = k1; k1 = k2;
        mpq_class approx(h1, k1);
        approx.canonicalize();
        mpq_class err = approx - target;
        if (abs(err) <= mpq_class(tol)) return approx;
        rem -= a;
        if (rem == 0) break;
        rem = 1 / rem;
    }
    return target;
}

HullMembership hull_float(std::span<const double> beta, const ApproxSet& aset, double tol) {
    const std::size_t d = aset.dim();
    const std::size_t nv = aset.vertices.size();
    std::vector<std::vector<double>> a(d + 1, std::vector<double>(nv));
    std::vector<double> b(d + 1);
    double l1 = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < nv; ++j) a[i][j] = aset.vertices[j][i];
        b[i] = beta[i];
        l1 += std::abs(beta[i]);
    }
    for (std::size_t j = 0; j < nv; ++j) a[d][j] = 1.0;
    b[d] = 1.0;

    const auto res = lp::phase_one<double>(a, b, {1e-12, tol * (1.0 + l1)});
    HullMembership out;
    out.inside = res.feasible;
    out.phase_one_objective = res.objective;
    out.pivots = res.pivots;
    if (res.feasible) {
        out.weights = res.x;
    } else {
        out.normal.assign(res.farkas.begin(), res.farkas.begin() + static_cast<std::ptrdiff_t>(d));
        out.offset = res.farkas[d];
    }
    return out;
}

HullMembership hull_exact(std::span<const double> beta, const ApproxSet& aset) {
    const std::size_t d = aset.dim();
    const std::size_t nv = aset.vertices.size();
    const mpq_class dq(static_cast<long>(d));

    std::vector<std::vector<mpq_class>> verts;
    for (std::size_t m = 0; m < d; ++m) {
        const mpq_class al = rationalize(aset.alphas[m]);
        const mpq_class rest = (1 - al) / dq;
        std::vector<mpq_class> x(d, rest);
        x[m] = al + rest;
        verts.push_back(std::move(x));
    }
    for (std::size_t m = 0; m < d; ++m) {
        std::vector<mpq_class> x(d, mpq_class(1, static_cast<unsigned long>(d - 1)));
        x[m] = 0;
        verts.push_back(std::move(x));
    }

    // rationalize beta, then restore sum(beta) = 1 exactly on its largest entry
    std::vector<mpq_class> bq(d);
    std::size_t biggest = 0;
    for (std::size_t i = 0; i < d; ++i) {
        bq[i] = rationalize(beta[i]);
        if (beta[i] > beta[biggest]) biggest = i;
    }
    mpq_class others = 0;
    for (std::size_t i = 0; i < d; ++i)
        if (i != biggest) others += bq[i];
    bq[biggest] = 1 - others;

    std::vector<std::vector<mpq_class>> a(d + 1, std::vector<mpq_class>(nv));
    std::vector<mpq_class> b(d + 1);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < nv; ++j) a[i][j] = verts[j][i];
        b[i] = bq[i];
    }
    for (std::size_t j = 0; j < nv; ++j) a[d][j] = 1;
    b[d] = 1;

    const auto res = lp::phase_one<mpq_class>(a, b, {mpq_class(0), mpq_class(0)});
    HullMembership out;
    out.inside = res.feasible;
    out.phase_one_objective = res.objective.get_d();
    out.pivots = res.pivots;
    if (res.feasible) {
        for (const auto& x : res.x) out.weights.push_back(x.get_d());
    } else {
        for (std::size_t i = 0; i < d; ++i) out.normal.push_back(res.farkas[i].get_d());
        out.offset = res.farkas[d].get_d();
    }
    return out;
}

}  // namespace

HullMembership hull_membership(std::span<const double> beta, const ApproxSet& aset, LpMode mode, double tol) {
    if (beta.size() != aset.dim()) throw Error(ErrorKind::wrong_dimension, "beta length != n^2");
    double sum = 0.0;
    for (double x : beta) {
        if (x < -tol) throw Error(ErrorKind::out_of_range, "negative barycentric coordinate", x);
        sum += x;
    }
    if (std::abs(sum - 1.0) > tol) throw Error(ErrorKind::out_of_range, "barycentric coordinates sum to " + std::to_string(sum), sum);
    return mode == LpMode::floating ? hull_float(beta, aset, tol) : hull_exact(beta, aset);
}

}  // namespace sepsimplex

#include "sepsimplex/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

namespace sepsimplex {

double TwirlSchedule::phi() const { return 2.0 * std::numbers::pi / static_cast<double>(modulus); }

std::vector<std::uint64_t> mian_chowla(std::size_t n) {
    std::vector<std::uint64_t> seq;
    std::set<std::uint64_t> diffs;
    for (std::uint64_t cand = 0; seq.size() < n; ++cand) {
        std::vector<std::uint64_t> fresh;
        bool ok = true;
        for (auto s : seq) {
            const std::uint64_t d = cand - s;
            if (diffs.count(d) || std::find(fresh.begin(), fresh.end(), d) != fresh.end()) {
                ok = false;
                break;
            }
            fresh.push_back(d);
        }
        if (!ok) continue;
        seq.push_back(cand);
        diffs.insert(fresh.begin(), fresh.end());
    }
    return seq;
}

bool is_prime(std::uint64_t v) {
    if (v < 2) return false;
    for (std::uint64_t f = 2; f * f <= v; ++f)
        if (v % f == 0) return false;
    return true;
}

bool differences_distinct_mod(const std::vector<std::uint64_t>& exponents, std::uint64_t modulus) {
    std::set<std::uint64_t> seen;
    for (std::size_t i = 0; i < exponents.size(); ++i)
        for (std::size_t j = 0; j < exponents.size(); ++j) {
            if (i == j) continue;
            const std::uint64_t d = (exponents[i] % modulus + modulus - exponents[j] % modulus) % modulus;
            if (d == 0 || !seen.insert(d).second) return false;
        }
    return true;
}

TwirlSchedule sidon_exponents(std::size_t n) {
    if (n == 0) throw Error(ErrorKind::out_of_range, "n must be >= 1");
    TwirlSchedule s;
    s.n = n;
    s.exponents = mian_chowla(n);
    const std::uint64_t top = *std::max_element(s.exponents.begin(), s.exponents.end());
    s.modulus = 2 * top + 1;
    while (!is_prime(s.modulus)) ++s.modulus;
    if (!differences_distinct_mod(s.exponents, s.modulus) || s.modulus <= 2 * top) {
        throw Error(ErrorKind::invariant_violation, "phase exponents are not difference-distinct");
    }
    return s;
}

ComplexMatrix product_seed_projector(const SchmidtDecomposition& sd, const std::optional<std::vector<int>>& signs) {
    const std::size_t n = sd.n;
    if (signs && signs->size() != n) throw Error(ErrorKind::wrong_dimension, "sign vector length");
    CVector a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double root = std::sqrt(sd.lambdas[i]);
        a[i] = root * (signs ? static_cast<double>((*signs)[i]) : 1.0);
        b[i] = root;
    }
    return ComplexMatrix::outer(kron(a, b));
}

namespace {

// Diagonal of (U1^t (x) U2^t): exp(i phi t (e_i - e_j)) for |ij>.
CVector twirl_phases(const TwirlSchedule& sched, std::uint64_t t) {
    const std::size_t n = sched.n;
    const std::uint64_t mod = sched.modulus;
    CVector ph(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::uint64_t diff = (sched.exponents[i] % mod + mod - sched.exponents[j] % mod) % mod;
            const std::uint64_t m = (t % mod) * diff % mod;
            ph[pair_index(n, i, j)] = std::polar(1.0, sched.phi() * static_cast<double>(m));
        }
    return ph;
}

CVector local_phases(const TwirlSchedule& sched, std::uint64_t t, bool conjugate) {
    CVector u(sched.n);
    for (std::size_t j = 0; j < sched.n; ++j) {
        const std::uint64_t m = (t % sched.modulus) * (sched.exponents[j] % sched.modulus) % sched.modulus;
        u[j] = std::polar(1.0, (conjugate ? -1.0 : 1.0) * sched.phi() * static_cast<double>(m));
    }
    return u;
}

CVector normalized(CVector v) {
    const double nv = norm(v);
    for (auto& z : v) z /= nv;
    return v;
}

// Twirl orbit of the product seed a (x) b as explicit unit product vectors.
// Each term carries scale * ||a||^2 ||b||^2 / N. A seed with a single
// nonzero component is twirl-invariant and yields one term.
void append_twirl_terms(std::vector<ProductTerm>& out, const CVector& a, const CVector& b,
                        const TwirlSchedule& sched, double scale) {
    const double na2 = std::norm(norm(a)), nb2 = std::norm(norm(b));
    const auto support = [](const CVector& v) {
        return std::count_if(v.begin(), v.end(), [](cplx z) { return z != cplx{}; });
    };
    if (support(a) <= 1 && support(b) <= 1) {
        out.push_back({scale * na2 * nb2, normalized(a), normalized(b)});
        return;
    }
    const double w = scale * na2 * nb2 / static_cast<double>(sched.modulus);
    for (std::uint64_t t = 0; t < sched.modulus; ++t) {
        const CVector u1 = local_phases(sched, t, false);
        const CVector u2 = local_phases(sched, t, true);
        CVector at(a.size()), bt(b.size());
        for (std::size_t j = 0; j < a.size(); ++j) {
            at[j] = u1[j] * a[j];
            bt[j] = u2[j] * b[j];
        }
        out.push_back({w, normalized(std::move(at)), normalized(std::move(bt))});
    }
}

CVector basis_vector(std::size_t n, std::size_t k) {
    CVector v(n);
    v[k] = 1.0;
    return v;
}

void require_reassembly(const SeparableDecomposition& dec, const char* what) {
    const VerifyReport rep = verify_decomposition(dec, 1e-10);
    if (!rep.pass) {
        std::string msg = std::string(what) + " certificate failed verification:";
        for (const auto& v : rep.violations) msg += " " + v + ";";
        throw Error(ErrorKind::invariant_violation, msg, rep.max_residual);
    }
}

}  // namespace

ComplexMatrix twirl_average(const ComplexMatrix& seed, const TwirlSchedule& sched) {
    if (seed.dim() != sched.n * sched.n) {
        throw Error(ErrorKind::wrong_dimension, "seed dim " + std::to_string(seed.dim()) + " != n^2");
    }
    const std::size_t d = seed.dim();
    ComplexMatrix acc(d);
    for (std::uint64_t t = 0; t < sched.modulus; ++t) {
        const CVector ph = twirl_phases(sched, t);
        for (std::size_t x = 0; x < d; ++x)
            for (std::size_t y = 0; y < d; ++y) acc(x, y) += ph[x] * seed(x, y) * std::conj(ph[y]);
    }
    acc *= cplx(1.0 / static_cast<double>(sched.modulus));
    return acc;
}

DensityMatrix rho_p_closed_form(const SchmidtDecomposition& sd, double tol) {
    const std::size_t n = sd.n;
    const auto& l = sd.lambdas;
    double sum = 0.0;
    for (double x : l) sum += x;
    ComplexMatrix m(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            m(pair_index(n, i, i), pair_index(n, k, k)) = l[i] * l[k];
            if (i != k) m(pair_index(n, i, k), pair_index(n, i, k)) = l[i] * l[k];
        }
    m *= cplx(1.0 / (sum * sum));
    return validate_density(std::move(m), n, tol);
}

ComplexMatrix reassemble(const SeparableDecomposition& dec) {
    ComplexMatrix m(dec.n * dec.n);
    for (const auto& t : dec.terms) {
        const CVector v = kron(t.a, t.b);
        for (std::size_t x = 0; x < v.size(); ++x)
            for (std::size_t y = 0; y < v.size(); ++y) m(x, y) += t.weight * v[x] * std::conj(v[y]);
    }
    return m;
}

SeparableDecomposition threshold_decomposition(const SchmidtDecomposition& sd) {
    const std::size_t n = sd.n;
    const auto& l = sd.lambdas;
    const auto [big_m, alpha] = ppt_threshold(sd);
    const double denom = 1.0 + static_cast<double>(n * n) * big_m;

    SeparableDecomposition dec;
    dec.n = n;
    const DensityMatrix p = validate_density(ComplexMatrix::outer(sd.schmidt_basis_vector()), n);
    dec.target = pencil_state(p, alpha).matrix();

    CVector seed(n);
    for (std::size_t i = 0; i < n; ++i) seed[i] = std::sqrt(l[i]);
    append_twirl_terms(dec.terms, seed, seed, sidon_exponents(n), 1.0 / denom);

    // padding over all ordered (k, r): weight M on the diagonal k == r
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t r = 0; r < n; ++r) {
            const double w = (big_m - (k == r ? 0.0 : l[k] * l[r])) / denom;
            if (w != 0.0) dec.terms.push_back({w, basis_vector(n, k), basis_vector(n, r)});
        }

    require_reassembly(dec, "threshold");
    return dec;
}

ComplexMatrix a_block(std::span<const double> lambdas, std::size_t k, std::size_t r) {
    const std::size_t n = lambdas.size();
    if (!(k < r && r < n)) {
        throw Error(ErrorKind::out_of_range, "A-block needs k < r < n, got k = " + std::to_string(k) +
                                                 ", r = " + std::to_string(r));
    }
    const double lk = lambdas[k], lr = lambdas[r];
    const double s = lk + lr;
    if (!(s > 0.0)) throw Error(ErrorKind::out_of_range, "A-block undefined for lambda_k + lambda_r = 0");
    const double inv = 1.0 / (s * s);
    const std::size_t kk = pair_index(n, k, k), rr = pair_index(n, r, r);
    const std::size_t kr = pair_index(n, k, r), rk = pair_index(n, r, k);
    ComplexMatrix m(n * n);
    m(kk, kk) = lr * lr * inv;
    m(rr, rr) = lk * lk * inv;
    m(kk, rr) = -lk * lr * inv;
    m(rr, kk) = -lk * lr * inv;
    m(kr, kr) = lk * lr * inv;
    m(rk, rk) = lk * lr * inv;
    return m;
}

ComplexMatrix a_block(const SchmidtDecomposition& sd, std::size_t k, std::size_t r) {
    return a_block(sd.lambdas, k, r);
}

SeparableDecomposition complement_decomposition(const SchmidtDecomposition& sd) {
    const std::size_t n = sd.n;
    if (n < 2) throw Error(ErrorKind::out_of_range, "complementary face needs n >= 2");
    const auto& l = sd.lambdas;
    const double face = static_cast<double>(n * n - 1);

    SeparableDecomposition dec;
    dec.n = n;
    ComplexMatrix target = ComplexMatrix::identity(n * n) - ComplexMatrix::outer(sd.schmidt_basis_vector());
    dec.target = target * cplx(1.0 / face);

    // A_[kr] is the 2x2 twirl state of (l_r |kk> - l_k |rr>), so its seed is
    // (sqrt(l_r)|k> - sqrt(l_k)|r>) (x) (sqrt(l_r)|k> + sqrt(l_k)|r>).
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t r = k + 1; r < n; ++r) {
            const double s = l[k] + l[r];
            if (!(s > 0.0)) continue;
            TwirlSchedule pair_sched{n, std::vector<std::uint64_t>(n, 0), 3};
            pair_sched.exponents[r] = 1;
            CVector a(n), b(n);
            a[k] = std::sqrt(l[r] / s);
            a[r] = -std::sqrt(l[k] / s);
            b[k] = std::sqrt(l[r] / s);
            b[r] = std::sqrt(l[k] / s);
            // ||a||^2 ||b||^2 = 1 here, so the scale is the block prefactor
            append_twirl_terms(dec.terms, a, b, pair_sched, s * s / face);
        }

    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t r = 0; r < n; ++r) {
            if (k == r) continue;
            dec.terms.push_back({(1.0 - l[k] * l[r]) / face, basis_vector(n, k), basis_vector(n, r)});
        }

    require_reassembly(dec, "complement");
    return dec;
}

SeparableDecomposition to_original_basis(const SeparableDecomposition& dec, const SchmidtDecomposition& sd) {
    SeparableDecomposition out;
    out.n = dec.n;
    const ComplexMatrix u = sd.local_unitary();
    out.target = u * dec.target * u.adjoint();
    out.terms.reserve(dec.terms.size());
    for (const auto& t : dec.terms) out.terms.push_back({t.weight, sd.basis_a.apply(t.a), sd.basis_b.apply(t.b)});
    return out;
}

VerifyReport verify_decomposition(const SeparableDecomposition& dec, double tol) {
    VerifyReport rep;
    rep.term_count = dec.terms.size();
    const std::size_t n = dec.n;

    bool shapes_ok = n > 0 && dec.target.dim() == n * n;
    for (const auto& t : dec.terms) shapes_ok = shapes_ok && t.a.size() == n && t.b.size() == n;
    if (!shapes_ok) {
        rep.violations.push_back("term or target dimensions inconsistent with n");
        return rep;
    }

    rep.min_weight = dec.terms.empty() ? 0.0 : dec.terms.front().weight;
    for (const auto& t : dec.terms) {
        rep.min_weight = std::min(rep.min_weight, t.weight);
        rep.weight_sum += t.weight;
        rep.max_norm_defect = std::max({rep.max_norm_defect, std::abs(norm(t.a) - 1.0), std::abs(norm(t.b) - 1.0)});
        if (n >= 2 && norm(t.a) > 0.0 && norm(t.b) > 0.0) {
            CVector v = kron(t.a, t.b);
            const double nv = norm(v);
            for (auto& z : v) z /= nv;
            const auto sd = schmidt_decompose(PureState(n, std::move(v)));
            rep.max_leakage = std::max(rep.max_leakage, sd.lambdas[1]);
        }
    }
    rep.max_residual = max_abs_diff(reassemble(dec), dec.target);

    if (rep.max_residual > tol)
        rep.violations.push_back("reassembly residual " + std::to_string(rep.max_residual) + " exceeds tolerance");
    if (rep.min_weight < -1e-12) rep.violations.push_back("negative weight " + std::to_string(rep.min_weight));
    if (std::abs(rep.weight_sum - 1.0) > 1e-10)
        rep.violations.push_back("weights sum to " + std::to_string(rep.weight_sum));
    if (rep.max_leakage > 1e-12)
        rep.violations.push_back("term not a product vector, second Schmidt coefficient " +
                                 std::to_string(rep.max_leakage));
    if (rep.max_norm_defect > 1e-10) rep.violations.push_back("term vectors not unit norm");
    rep.pass = rep.violations.empty();
    return rep;
}

}  // namespace sepsimplex

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "oracles.hpp"
#include "sepsimplex/constructions.hpp"
#include "sepsimplex/geometry.hpp"
#include "sepsimplex/volume.hpp"

using namespace sepsimplex;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double factorial(std::size_t k) { return std::tgamma(double(k) + 1.0); }

Verdict a1_threshold_law() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1001);
    double worst = 0.0;
    for (std::size_t n : {2u, 3u}) {
        for (int rep = 0; rep < 200; ++rep) {
            const PureState psi(n, oracle::random_state(n * n, rng));
            // lambda_1 lambda_2 from the reduced-density spectrum, independent of the SVD path
            auto ev = oracle::hermitian_eigenvalues_via_embedding(oracle::reduced_first(psi.amplitudes(), n));
            std::sort(ev.rbegin(), ev.rend());
            const double m = std::sqrt(std::max(ev[0], 0.0) * std::max(ev[1], 0.0));
            const double expected = 1.0 / (1.0 + double(n * n) * m);
            worst = std::max(worst, std::abs(ppt_boundary_scan(psi).alpha_star - expected));
        }
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-8 && secs <= 60.0, fmt("max |scan - 1/(1+n^2 l1 l2)| = %.3e (tol 1e-8), %.2f s (limit 60 s)", worst, secs)};
}

Verdict a2_maximally_entangled() {
    double worst = 0.0;
    for (std::size_t n = 2; n <= 5; ++n) {
        const double target = 1.0 / double(n + 1);
        const auto sd = SchmidtDecomposition::from_coefficients(std::vector<double>(n, 1.0 / std::sqrt(double(n))));
        worst = std::max(worst, std::abs(ppt_threshold(sd).alpha - target));
        // same through the full decomposition of sum_k |kk>/sqrt(n)
        worst = std::max(worst, std::abs(ppt_threshold(schmidt_decompose(PureState(n, sd.schmidt_basis_vector()))).alpha - target));
        // and through the auto alphas of the built-in maximally entangled simplex
        for (double a : approx_set(bell_simplex(n)).alphas) worst = std::max(worst, std::abs(a - target));
    }
    return {worst <= 1e-12, fmt("max |alpha_M - 1/(n+1)| over n=2..5 = %.3e (tol 1e-12)", worst)};
}

Verdict a3_twirl() {
    std::mt19937_64 rng(1003);
    double worst = 0.0;
    for (std::size_t n : {2u, 3u, 4u}) {
        const auto sched = sidon_exponents(n);
        for (int rep = 0; rep < 20; ++rep) {
            const auto sd = SchmidtDecomposition::from_coefficients(oracle::random_schmidt_spectrum(n, rng));
            double s = 0.0;
            for (double l : sd.lambdas) s += l;
            const auto tw = twirl_average(product_seed_projector(sd), sched);
            worst = std::max(worst, max_abs_diff(tw, rho_p_closed_form(sd).matrix() * cplx(s * s)));
        }
    }
    bool sidon = true;
    for (std::size_t n = 1; n <= 8; ++n) {
        const auto sched = sidon_exponents(n);
        sidon = sidon && oracle::brute_force_sidon(sched.exponents, sched.modulus) &&
                differences_distinct_mod(sched.exponents, sched.modulus);
    }
    return {worst <= 1e-12 && sidon,
            fmt("max twirl error = %.3e (tol 1e-12); Sidon n<=8 exhaustive: ", worst) + (sidon ? "ok" : "FAILED")};
}

Verdict a4_reassembly() {
    std::mt19937_64 rng(1004);
    double resid = 0.0, min_w = 1.0, leak = 0.0;
    for (std::size_t n : {2u, 3u}) {
        for (int rep = 0; rep < 20; ++rep) {
            const auto sd = SchmidtDecomposition::from_coefficients(oracle::random_schmidt_spectrum(n, rng));
            for (const auto& dec : {threshold_decomposition(sd), complement_decomposition(sd)}) {
                const auto r = verify_decomposition(dec);
                resid = std::max(resid, max_abs_diff(reassemble(dec), dec.target));
                min_w = std::min(min_w, r.min_weight);
                leak = std::max(leak, r.max_leakage);
            }
        }
    }
    const bool pass = resid <= 1e-10 && min_w >= -1e-12 && leak <= 1e-12;
    return {pass, fmt("max residual = %.3e (tol 1e-10), min weight = %.3e (>= -1e-12), max leakage = %.3e (tol 1e-12)",
                      resid, min_w, leak)};
}

Verdict a5_a_blocks() {
    std::mt19937_64 rng(1005);
    double min_ev = 1.0, min_pt = 1.0;
    std::size_t blocks = 0;
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 2 + std::size_t(rep % 3);
        const auto l = oracle::random_schmidt_spectrum(n, rng);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t r = k + 1; r < n; ++r) {
                if (l[k] + l[r] == 0.0) continue;
                const auto a = a_block(l, k, r);
                for (double e : oracle::hermitian_eigenvalues_via_embedding(a)) min_ev = std::min(min_ev, e);
                for (double e : oracle::hermitian_eigenvalues_via_embedding(oracle::partial_transpose_b(a, n)))
                    min_pt = std::min(min_pt, e);
                ++blocks;
            }
    }
    return {min_ev >= -1e-12 && min_pt >= -1e-12,
            fmt("%g blocks: min eigenvalue = %.3e, min PT eigenvalue = %.3e (both >= -1e-12)", double(blocks), min_ev, min_pt)};
}

Verdict a6_hull_ppt() {
    std::mt19937_64 rng(1006);
    std::exponential_distribution<double> e;
    double worst = 1.0;
    for (std::size_t n : {2u, 3u}) {
        const auto a = approx_set(bell_simplex(n));
        for (int rep = 0; rep < 1000; ++rep) {
            std::vector<double> w(a.vertices.size());
            double s = 0.0;
            for (auto& x : w) s += (x = e(rng));
            std::vector<double> beta(a.dim(), 0.0);
            for (std::size_t j = 0; j < w.size(); ++j)
                for (std::size_t i = 0; i < a.dim(); ++i) beta[i] += w[j] / s * a.vertices[j][i];
            worst = std::min(worst, is_ppt(a.simplex.state_at(beta), n).min_pt_eigenvalue);
        }
    }
    return {worst >= -1e-10, fmt("2000 hull points (n=2,3): min PT eigenvalue = %.3e (>= -1e-10)", worst)};
}

Verdict a7_volume() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (std::size_t n : {2u, 3u})
        for (double a : {0.1, 1.0 / double(n + 1), 0.9}) {
            const double tri = set_volume_uniform(n, a).volume;
            const double bound = paper_volume_bound(n, a);
            worst = std::max(worst, std::abs(tri - bound) / bound);
        }
    const auto aset = approx_set(bell_simplex(2), std::vector<double>(4, 1.0 / 3.0));
    const auto rep = volume_report(aset, 100000, 2024);
    const double diff = std::abs(rep.mc->fraction - rep.triangulation_fraction);
    const bool mc_ok = diff <= 3.0 * rep.mc->stderr_;
    // zero overlaps give a zero binomial stderr; the one-sided 3-sigma bound then needs the count itself to be 0
    const bool overlap_ok = rep.mc_pieces->overlap_fraction <= 3.0 * rep.mc_pieces->overlap_stderr;
    const double secs = seconds_since(t0);
    const bool pass = worst <= 1e-9 && mc_ok && overlap_ok && secs <= 600.0;
    return {pass, fmt("max rel |bound - triangulation| = %.3e (tol 1e-9); ", worst) +
                      fmt("MC %.5f vs %.5f, |diff| = %.2f stderr (limit 3); ", rep.mc->fraction, rep.triangulation_fraction,
                          diff / rep.mc->stderr_) +
                      fmt("overlap fraction %.3e (stderr %.3e); %.2f s (limit 600 s)", rep.mc_pieces->overlap_fraction,
                          rep.mc_pieces->overlap_stderr, secs)};
}

Verdict a8_degenerate() {
    bool ok = true;
    std::string detail;
    for (std::size_t n : {2u, 3u}) {
        std::vector<double> l(n, 0.0);
        l[0] = 1.0;
        const auto sd = SchmidtDecomposition::from_coefficients(l);
        const auto dec = threshold_decomposition(sd);
        ok = ok && ppt_threshold(sd).alpha == 1.0 && dec.terms.size() == 1;

        const double expected = std::sqrt(double(n * n)) / factorial(n * n - 1);
        const double full = set_volume_uniform(n, 1.0).volume;
        const double rel = std::abs(full - expected) / expected;
        const double zero = set_volume_uniform(n, 0.0).volume;
        ok = ok && rel <= 1e-12 && zero == 0.0;
        detail += fmt("n=%g: product alpha_M = %g, ", double(n), ppt_threshold(sd).alpha) +
                  std::to_string(dec.terms.size()) + " term(s), " +
                  fmt("alpha=1 volume rel err %.3e, alpha=0 volume %g; ", rel, zero);
    }
    return {ok, detail};
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Verdict()>> criteria[] = {
        {"A1", a1_threshold_law}, {"A2", a2_maximally_entangled}, {"A3", a3_twirl}, {"A4", a4_reassembly},
        {"A5", a5_a_blocks},      {"A6", a6_hull_ppt},            {"A7", a7_volume}, {"A8", a8_degenerate},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Verdict v;
        try {
            v = check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s %s  %s\n", name, v.pass ? "PASS" : "FAIL", v.detail.c_str());
        std::fflush(stdout);
        failed += v.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}

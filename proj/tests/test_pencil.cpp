#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sepsimplex/pencil.hpp"

using namespace sepsimplex;

namespace {

PureState bell_state() {
    const double h = 1.0 / std::sqrt(2.0);
    return PureState(2, CVector{h, 0.0, 0.0, h});
}

PureState with_schmidt(const std::vector<double>& l, const ComplexMatrix& u) {
    const std::size_t n = l.size();
    CVector psi(n * n);
    for (std::size_t k = 0; k < n; ++k) psi[k * n + k] = l[k];
    return PureState(n, u.apply(psi));
}

}  // namespace

TEST_CASE("schmidt_decompose fixed cases") {
    const auto bell = schmidt_decompose(bell_state());
    CHECK(bell.lambdas[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(bell.lambdas[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

    const auto prod = schmidt_decompose(PureState(2, CVector{0.0, 1.0, 0.0, 0.0}));
    CHECK(prod.lambdas[0] == doctest::Approx(1.0));
    CHECK(prod.lambdas[1] == doctest::Approx(0.0));

    // non-normalized input is rejected before any decomposition
    CHECK_THROWS_AS(schmidt_decompose(PureState(2, CVector{1.0, 1.0, 0.0, 0.0})), Error);
}

TEST_CASE("schmidt_decompose random states against the reduced-density oracle") {
    std::mt19937_64 rng(21);
    for (std::size_t n : {2u, 3u, 4u}) {
        for (int rep = 0; rep < 25; ++rep) {
            const PureState psi(n, oracle::random_state(n * n, rng));
            const auto sd = schmidt_decompose(psi);
            CHECK_NOTHROW(sd.check(1e-12));

            double sq = 0.0;
            for (double l : sd.lambdas) sq += l * l;
            CHECK(std::abs(sq - 1.0) <= 1e-12);

            const auto back = sd.reconstruct();
            double resid = 0.0;
            for (std::size_t i = 0; i < back.size(); ++i) resid = std::max(resid, std::abs(back[i] - psi.amplitudes()[i]));
            CHECK(resid <= 1e-12);

            // squared Schmidt coefficients = spectrum of rho_A
            auto ev = oracle::hermitian_eigenvalues_via_embedding(oracle::reduced_first(psi.amplitudes(), n));
            std::sort(ev.rbegin(), ev.rend());
            for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(sd.lambdas[k] * sd.lambdas[k] - ev[k]) <= 1e-12);
        }
    }
}

TEST_CASE("Schmidt coefficients are invariant under local unitaries") {
    std::mt19937_64 rng(4);
    for (std::size_t n : {2u, 3u}) {
        for (int rep = 0; rep < 20; ++rep) {
            const PureState psi(n, oracle::random_state(n * n, rng));
            const auto u = kron(oracle::random_unitary(n, rng), oracle::random_unitary(n, rng));
            const PureState moved(n, u.apply(psi.amplitudes()));
            const auto a = schmidt_decompose(psi), b = schmidt_decompose(moved);
            for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(a.lambdas[k] - b.lambdas[k]) <= 1e-10);
        }
    }
}

TEST_CASE("degenerate spectra decompose deterministically") {
    const double h = 1.0 / std::sqrt(3.0);
    CVector psi(9);
    for (std::size_t k = 0; k < 3; ++k) psi[k * 3 + k] = h;
    const auto a = schmidt_decompose(PureState(3, psi));
    const auto b = schmidt_decompose(PureState(3, psi));
    CHECK(max_abs_diff(a.basis_a, b.basis_a) == 0.0);
    CHECK(max_abs_diff(a.basis_b, b.basis_b) == 0.0);
    // canonical phase: each a-column has a real positive largest entry
    for (std::size_t k = 0; k < 3; ++k) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < 3; ++i)
            if (std::abs(a.basis_a(i, k)) > std::abs(a.basis_a(best, k))) best = i;
        CHECK(a.basis_a(best, k).imag() == 0.0);
        CHECK(a.basis_a(best, k).real() > 0.0);
    }
}

TEST_CASE("ppt_threshold") {
    for (std::size_t n = 2; n <= 5; ++n) {
        const auto sd = SchmidtDecomposition::from_coefficients(std::vector<double>(n, 1.0 / std::sqrt(double(n))));
        const auto t = ppt_threshold(sd);
        CHECK(t.max_product == doctest::Approx(1.0 / double(n)).epsilon(1e-14));
        CHECK(std::abs(t.alpha - 1.0 / double(n + 1)) <= 1e-12);
    }

    const auto prod = ppt_threshold(SchmidtDecomposition::from_coefficients({1.0, 0.0, 0.0}));
    CHECK(prod.max_product == 0.0);
    CHECK(prod.alpha == 1.0);

    // n = 3, lambda = (sqrt .5, sqrt .3, sqrt .2): M = sqrt(.15); value from 50-digit evaluation
    const auto sd = SchmidtDecomposition::from_coefficients({std::sqrt(0.5), std::sqrt(0.3), std::sqrt(0.2)});
    const auto t = ppt_threshold(sd);
    CHECK(t.max_product == doctest::Approx(0.38729833462074168852).epsilon(1e-15));
    CHECK(t.alpha == doctest::Approx(0.22293139117369284275).epsilon(1e-15));

    // the bisection oracle lands on the same boundary
    const auto scan = ppt_boundary_scan(with_schmidt(sd.lambdas, ComplexMatrix::identity(9)));
    CHECK_FALSE(scan.fully_ppt);
    CHECK(std::abs(scan.alpha_star - t.alpha) <= 1e-8);
}

TEST_CASE("ppt_boundary_scan") {
    const auto bell = ppt_boundary_scan(bell_state());
    CHECK(std::abs(bell.alpha_star - 1.0 / 3.0) <= 1e-9);

    const auto prod = ppt_boundary_scan(PureState(2, CVector{1.0, 0.0, 0.0, 0.0}));
    CHECK(prod.fully_ppt);
    CHECK(prod.alpha_star == 1.0);

    std::mt19937_64 rng(77);
    for (std::size_t n : {2u, 3u}) {
        for (int rep = 0; rep < 40; ++rep) {
            const PureState psi(n, oracle::random_state(n * n, rng));
            const auto scan = ppt_boundary_scan(psi);
            const auto t = ppt_threshold(schmidt_decompose(psi));
            CHECK(std::abs(scan.alpha_star - t.alpha) <= 1e-8);
        }
    }
}

TEST_CASE("alpha_M bounds over Schmidt spectra") {
    // n = 2: the uniform spectrum is the most entangled and gives the smallest alpha_M.
    // n >= 3: M = l_1 l_2 <= 1/2, attained at (1/sqrt2, 1/sqrt2, 0, ...), so the
    // minimum is 1/(1 + n^2/2), strictly below the uniform value 1/(n+1).
    std::mt19937_64 rng(8);
    for (int rep = 0; rep < 200; ++rep) {
        const auto sd = SchmidtDecomposition::from_coefficients(oracle::random_schmidt_spectrum(2, rng));
        CHECK(ppt_threshold(sd).alpha >= 1.0 / 3.0 - 1e-15);
    }
    for (std::size_t n : {3u, 4u}) {
        const double floor = 1.0 / (1.0 + double(n * n) / 2.0);
        for (int rep = 0; rep < 200; ++rep) {
            const auto sd = SchmidtDecomposition::from_coefficients(oracle::random_schmidt_spectrum(n, rng));
            CHECK(ppt_threshold(sd).alpha >= floor - 1e-15);
        }
        std::vector<double> two(n, 0.0);
        two[0] = two[1] = 1.0 / std::sqrt(2.0);
        const double a2 = ppt_threshold(SchmidtDecomposition::from_coefficients(two)).alpha;
        CHECK(a2 == doctest::Approx(floor).epsilon(1e-14));
        CHECK(a2 < 1.0 / double(n + 1));
    }
}

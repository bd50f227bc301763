#include <doctest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>

#include "sepsimplex/volume.hpp"

using namespace sepsimplex;
using big = boost::multiprecision::cpp_dec_float_50;

namespace {

// Direct 50-digit evaluation of the closed-form bound.
big bound_50(unsigned n, big a) {
    const big d = n * n - 1;
    big fact = 1;
    for (unsigned k = 2; k <= n * n - 1; ++k) fact *= k;
    const big n2 = n * n;
    return pow(a, d - 1) * sqrt(d) / fact * (a * sqrt(n2 / d) + n2 * (1 - a) / sqrt(n2 * d));
}

ApproxSet uniform_set(std::size_t n, double alpha) {
    return approx_set(bell_simplex(n), std::vector<double>(n * n, alpha));
}

}  // namespace

TEST_CASE("gram_simplex_volume") {
    // unit right triangle in the plane
    CHECK(gram_simplex_volume({{0, 0}, {1, 0}, {0, 1}}) == doctest::Approx(0.5));
    // standard 3-simplex conv(e_i) in R^4: sqrt(4)/3!
    CHECK(gram_simplex_volume({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}) == doctest::Approx(1.0 / 3.0));
    CHECK(gram_simplex_volume({{0, 0}, {1, 1}, {2, 2}}) <= 1e-15);
}

TEST_CASE("paper_volume_bound") {
    for (std::size_t n : {2u, 3u, 4u}) {
        CHECK(paper_volume_bound(n, 1.0) == doctest::Approx(full_simplex_volume(n)).epsilon(1e-13));
        CHECK(paper_volume_bound(n, 0.0) == 0.0);
    }
    CHECK(full_simplex_volume(2) == doctest::Approx(1.0 / 3.0));

    // 50-digit golden: n = 2, alpha = 1/3 gives exactly 1/27
    const big golden = bound_50(2, big(1) / 3);
    CHECK(abs(golden - big(1) / 27) < big("1e-45"));
    CHECK(paper_volume_bound(2, 1.0 / 3.0) == doctest::Approx(golden.convert_to<double>()).epsilon(1e-14));

    for (unsigned n : {2u, 3u, 4u})
        for (double a : {0.1, 0.37, 0.9}) {
            const double ref = bound_50(n, big(a)).convert_to<double>();
            CHECK(paper_volume_bound(n, a) == doctest::Approx(ref).epsilon(1e-13));
        }

    CHECK_THROWS_AS(paper_volume_bound(2, 1.5), Error);
    CHECK_THROWS_AS(paper_volume_bound(2, -0.1), Error);
}

TEST_CASE("set_volume_exact") {
    for (std::size_t n : {2u, 3u}) {
        const auto full = set_volume_exact(uniform_set(n, 1.0));
        CHECK(full.volume == doctest::Approx(full_simplex_volume(n)).epsilon(1e-12));
        for (double p : full.pyramids) CHECK(p <= 1e-12 * full.volume);
    }
    const auto zero = set_volume_uniform(2, 0.0);
    CHECK(zero.volume == 0.0);
    CHECK(zero.degenerate);

    const auto v = set_volume_exact(uniform_set(2, 1.0 / 3.0));
    CHECK(v.volume == doctest::Approx(1.0 / 27.0).epsilon(1e-13));

    for (std::size_t n : {2u, 3u})
        for (double a : {0.1, 1.0 / double(n + 1), 0.9}) {
            const double tri = set_volume_uniform(n, a).volume;
            const double bound = paper_volume_bound(n, a);
            CHECK(std::abs(tri - bound) <= 1e-9 * bound);
        }

    // non-uniform alphas floor to the minimum
    auto mixed = approx_set(bell_simplex(2), std::vector<double>{0.3, 0.5, 0.7, 0.9});
    CHECK(set_volume_exact(mixed).alpha == 0.3);
    CHECK(set_volume_exact(mixed).volume == doctest::Approx(set_volume_uniform(2, 0.3).volume));
}

TEST_CASE("uniform_simplex_point") {
    const auto p = uniform_simplex_point(4, 7, 0, 0);
    const auto q = uniform_simplex_point(4, 7, 0, 0);
    CHECK(p == q);
    double s = 0.0;
    for (double x : p) {
        CHECK(x > 0.0);
        s += x;
    }
    CHECK(s == doctest::Approx(1.0));
    CHECK(uniform_simplex_point(4, 7, 0, 1) != p);
    CHECK(uniform_simplex_point(4, 7, 1, 0) != p);
    CHECK(uniform_simplex_point(4, 8, 0, 0) != p);

    // first coordinate of a uniform point on the 3-simplex has mean 1/4
    double mean = 0.0;
    const int count = 20000;
    for (int i = 0; i < count; ++i) mean += uniform_simplex_point(4, 1, i / 4096, i % 4096)[0];
    mean /= count;
    CHECK(std::abs(mean - 0.25) < 4.0 * std::sqrt(3.0 / 80.0 / count));
}

TEST_CASE("mc_fraction") {
    const auto full = uniform_set(2, 1.0);
    const auto r = mc_fraction(full, 2000, 3, McTarget::hull);
    CHECK(r.fraction == 1.0);
    CHECK(r.stderr_ == 0.0);

    const auto a = uniform_set(2, 1.0 / 3.0);
    const auto one = mc_fraction(a, 9000, 5, McTarget::pieces, 1);
    const auto many = mc_fraction(a, 9000, 5, McTarget::pieces, 3);
    CHECK(one.hits == many.hits);
    CHECK(one.fraction == many.fraction);
    CHECK(one.overlaps == 0);

    const auto hull = mc_fraction(a, 9000, 5, McTarget::hull);
    CHECK(one.fraction <= hull.fraction);
    CHECK(std::abs(hull.fraction - 1.0 / 9.0) <= 3.0 * hull.stderr_ + 1e-12);

    // the whole set is PPT, so PPT fraction dominates it
    const auto ppt = mc_fraction(a, 4000, 5, McTarget::ppt);
    CHECK(ppt.fraction >= mc_fraction(a, 4000, 5, McTarget::hull).fraction);
    // Bell-diagonal PPT states are the octahedron, half the simplex
    CHECK(std::abs(ppt.fraction - 0.5) <= 4.0 * ppt.stderr_);

    CHECK_THROWS_AS(mc_fraction(a, 0, 1, McTarget::hull), Error);
    CHECK(mc_target_from_string("pieces") == McTarget::pieces);
    CHECK_THROWS_AS(mc_target_from_string("bogus"), Error);
}

#include "sepsimplex/volume.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace sepsimplex {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t chunk_key(std::uint64_t seed, std::uint64_t chunk) {
    return finalize(seed ^ finalize(chunk + kGolden));
}

// (0, 1), 53-bit resolution
double unit_open(std::uint64_t bits) { return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53; }

double log_factorial(std::size_t k) { return std::lgamma(static_cast<double>(k) + 1.0); }

// Inverse via Gauss-Jordan; nullopt when numerically singular.
std::optional<std::vector<std::vector<double>>> inverse(std::vector<std::vector<double>> m) {
    const std::size_t k = m.size();
    std::vector<std::vector<double>> inv(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) inv[i][i] = 1.0;
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < k; ++r)
            if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
        if (std::abs(m[piv][c]) < 1e-14) return std::nullopt;
        std::swap(m[piv], m[c]);
        std::swap(inv[piv], inv[c]);
        const double p = m[c][c];
        for (std::size_t j = 0; j < k; ++j) {
            m[c][j] /= p;
            inv[c][j] /= p;
        }
        for (std::size_t r = 0; r < k; ++r) {
            if (r == c || m[r][c] == 0.0) continue;
            const double f = m[r][c];
            for (std::size_t j = 0; j < k; ++j) {
                m[r][j] -= f * m[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

std::vector<std::vector<double>> central_vertices(std::size_t n, double alpha) {
    const std::vector<double> alphas(n * n, alpha);
    auto v = approx_set_vertices(n, alphas);
    v.resize(n * n);
    return v;
}

std::vector<double> apex(std::size_t n, std::size_t m) {
    const std::size_t d = n * n;
    std::vector<double> x(d, 1.0 / static_cast<double>(d - 1));
    x[m] = 0.0;
    return x;
}

// Pieces of the triangulation as vertex lists: [0] central, [1 + m] pyramid m.
std::vector<std::vector<std::vector<double>>> pieces(std::size_t n, double alpha) {
    const auto central = central_vertices(n, alpha);
    std::vector<std::vector<std::vector<double>>> out{central};
    for (std::size_t m = 0; m < n * n; ++m) {
        auto p = central;
        p[m] = apex(n, m);
        out.push_back(std::move(p));
    }
    return out;
}

// Barycentric point-in-piece tests with precomputed inverses of the
// (vertex-as-column) matrices. Degenerate pieces have measure zero and are skipped.
class PieceLocator {
public:
    PieceLocator(std::size_t n, double alpha) {
        for (const auto& verts : pieces(n, alpha)) {
            const std::size_t k = verts.size();
            std::vector<std::vector<double>> cols(k, std::vector<double>(k));
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) cols[i][j] = verts[j][i];
            inverses_.push_back(inverse(std::move(cols)));
        }
    }

    std::size_t count_containing(std::span<const double> beta) const {
        std::size_t hits = 0;
        for (const auto& inv : inverses_) {
            if (!inv) continue;
            bool inside = true;
            for (std::size_t i = 0; i < inv->size() && inside; ++i) {
                double lam = 0.0;
                for (std::size_t j = 0; j < beta.size(); ++j) lam += (*inv)[i][j] * beta[j];
                inside = lam >= -1e-12;
            }
            hits += inside ? 1 : 0;
        }
        return hits;
    }

private:
    std::vector<std::optional<std::vector<std::vector<double>>>> inverses_;
};

double binomial_stderr(double p, std::uint64_t samples) {
    return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(samples));
}

}  // namespace

double gram_simplex_volume(const std::vector<std::vector<double>>& vertices) {
    if (vertices.size() < 2) return 0.0;
    const std::size_t k = vertices.size() - 1;
    const std::size_t dim = vertices[0].size();
    std::vector<std::vector<double>> q(k, std::vector<double>(dim));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t c = 0; c < dim; ++c) q[i][c] = vertices[i + 1][c] - vertices[0][c];

    // sqrt(det(E^T E)) = prod |r_ii| for E = QR; modified Gram-Schmidt with a
    // second pass keeps near-degenerate heights at their true (tiny) size
    double log_vol = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t j = 0; j < i; ++j) {
                double p = 0.0;
                for (std::size_t c = 0; c < dim; ++c) p += q[j][c] * q[i][c];
                for (std::size_t c = 0; c < dim; ++c) q[i][c] -= p * q[j][c];
            }
        double r = 0.0;
        for (double x : q[i]) r += x * x;
        r = std::sqrt(r);
        if (!(r > 0.0)) return 0.0;
        for (double& x : q[i]) x /= r;
        log_vol += std::log(r);
    }
    return std::exp(log_vol - log_factorial(k));
}

double full_simplex_volume(std::size_t n) {
    const std::size_t d = n * n - 1;
    return std::exp(0.5 * std::log(static_cast<double>(n * n)) - log_factorial(d));
}

SetVolume set_volume_uniform(std::size_t n, double alpha) {
    if (n < 2) throw Error(ErrorKind::out_of_range, "volume needs n >= 2");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorKind::out_of_range, "alpha outside [0,1]", alpha);
    SetVolume out;
    out.alpha = alpha;
    if (alpha == 0.0) {
        out.degenerate = true;
        out.pyramids.assign(n * n, 0.0);
        return out;
    }
    const auto ps = pieces(n, alpha);
    out.central = gram_simplex_volume(ps[0]);
    out.volume = out.central;
    for (std::size_t m = 1; m < ps.size(); ++m) {
        out.pyramids.push_back(gram_simplex_volume(ps[m]));
        out.volume += out.pyramids.back();
    }
    return out;
}

SetVolume set_volume_exact(const ApproxSet& aset) { return set_volume_uniform(aset.n(), aset.alpha_min()); }

double paper_volume_log_bound(std::size_t n, double alpha_min) {
    if (n < 2) throw Error(ErrorKind::out_of_range, "volume bound needs n >= 2");
    if (!(alpha_min >= 0.0 && alpha_min <= 1.0))
        throw Error(ErrorKind::out_of_range, "alpha_min outside [0,1]", alpha_min);
    if (alpha_min == 0.0) return -std::numeric_limits<double>::infinity();
    const double d = static_cast<double>(n * n - 1);
    const double n2 = static_cast<double>(n * n);
    const double heights = alpha_min * std::sqrt(n2 / d) + n2 * (1.0 - alpha_min) / std::sqrt(n2 * d);
    return (d - 1.0) * std::log(alpha_min) + 0.5 * std::log(d) - log_factorial(n * n - 1) + std::log(heights);
}

double paper_volume_bound(std::size_t n, double alpha_min) {
    const double lv = paper_volume_log_bound(n, alpha_min);
    return std::isinf(lv) ? 0.0 : std::exp(lv);
}

const char* to_string(McTarget t) {
    switch (t) {
        case McTarget::hull: return "hull";
        case McTarget::pieces: return "pieces";
        case McTarget::ppt: return "ppt";
    }
    return "?";
}

McTarget mc_target_from_string(const std::string& s) {
    if (s == "hull") return McTarget::hull;
    if (s == "pieces") return McTarget::pieces;
    if (s == "ppt") return McTarget::ppt;
    throw Error(ErrorKind::malformed_input, "unknown Monte Carlo target '" + s + "'");
}

std::vector<double> uniform_simplex_point(std::size_t dim, std::uint64_t seed, std::uint64_t chunk,
                                          std::uint64_t index) {
    const std::uint64_t key = chunk_key(seed, chunk);
    std::vector<double> x(dim);
    double total = 0.0;
    for (std::size_t m = 0; m < dim; ++m) {
        const std::uint64_t counter = index * dim + m + 1;
        x[m] = -std::log(unit_open(finalize(key + counter * kGolden)));
        total += x[m];
    }
    for (auto& v : x) v /= total;
    return x;
}

McResult mc_fraction(const ApproxSet& aset, std::uint64_t samples, std::uint64_t seed, McTarget target,
                     unsigned threads) {
    if (samples == 0) throw Error(ErrorKind::out_of_range, "samples must be >= 1");
    const std::size_t dim = aset.dim();
    const std::uint64_t chunks = (samples + kMcChunk - 1) / kMcChunk;
    std::vector<std::uint64_t> hits(chunks, 0), overlaps(chunks, 0);

    std::optional<PieceLocator> locator;
    if (target == McTarget::pieces && aset.alpha_min() > 0.0) locator.emplace(aset.n(), aset.alpha_min());

    auto run_chunk = [&](std::uint64_t c) {
        const std::uint64_t begin = c * kMcChunk;
        const std::uint64_t end = std::min<std::uint64_t>(samples, begin + kMcChunk);
        for (std::uint64_t i = 0; i < end - begin; ++i) {
            const auto beta = uniform_simplex_point(dim, seed, c, i);
            switch (target) {
                case McTarget::hull:
                    hits[c] += hull_membership(beta, aset, LpMode::floating).inside ? 1 : 0;
                    break;
                case McTarget::pieces: {
                    const std::size_t k = locator ? locator->count_containing(beta) : 0;
                    hits[c] += k >= 1 ? 1 : 0;
                    overlaps[c] += k >= 2 ? 1 : 0;
                    break;
                }
                case McTarget::ppt:
                    hits[c] += is_ppt(aset.simplex.state_at(beta), aset.n()).ppt ? 1 : 0;
                    break;
            }
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(chunks)));
    if (workers == 1) {
        for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::uint64_t c = w; c < chunks; c += workers) run_chunk(c);
            });
        for (auto& t : pool) t.join();
    }

    McResult r;
    r.samples = samples;
    for (std::uint64_t c = 0; c < chunks; ++c) {
        r.hits += hits[c];
        r.overlaps += overlaps[c];
    }
    r.fraction = static_cast<double>(r.hits) / static_cast<double>(samples);
    r.stderr_ = binomial_stderr(r.fraction, samples);
    r.overlap_fraction = static_cast<double>(r.overlaps) / static_cast<double>(samples);
    r.overlap_stderr = binomial_stderr(r.overlap_fraction, samples);
    return r;
}

VolumeReport volume_report(const ApproxSet& aset, std::optional<std::uint64_t> mc_samples, std::uint64_t seed,
                           unsigned threads) {
    VolumeReport rep;
    rep.n = aset.n();
    rep.alphas = aset.alphas;
    rep.alpha_min = aset.alpha_min();
    rep.triangulation = set_volume_exact(aset);
    rep.paper_bound = paper_volume_bound(rep.n, rep.alpha_min);
    rep.simplex_volume = full_simplex_volume(rep.n);
    rep.triangulation_fraction = rep.triangulation.volume / rep.simplex_volume;
    rep.paper_fraction = rep.paper_bound / rep.simplex_volume;
    rep.mc_seed = seed;
    if (mc_samples) {
        rep.mc = mc_fraction(aset, *mc_samples, seed, McTarget::hull, threads);
        rep.mc_pieces = mc_fraction(aset, *mc_samples, seed, McTarget::pieces, threads);
    }
    return rep;
}

}  // namespace sepsimplex

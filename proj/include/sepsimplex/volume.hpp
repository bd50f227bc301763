#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sepsimplex/geometry.hpp"

namespace sepsimplex {

// Volumes use the Euclidean metric on barycentric (eigenvalue) vectors, so
// the full simplex is regular with edge sqrt(2), the Hilbert-Schmidt
// distance between orthogonal pure states.

// k-volume of conv(vertices) (k + 1 points in R^D) from the Gram determinant.
double gram_simplex_volume(const std::vector<std::vector<double>>& vertices);

// sqrt(n^2) / (n^2 - 1)!
double full_simplex_volume(std::size_t n);

struct SetVolume {
    double alpha = 0.0;            // the uniform alpha actually used (alpha_min)
    double volume = 0.0;           // central + sum of pyramids
    double central = 0.0;
    std::vector<double> pyramids;  // one per vertex m
    bool degenerate = false;       // alpha == 0
};

// Central simplex (pencil vertices) plus one pyramid per vertex m, with base
// the central facet opposite m and apex (I - P_m)/(n^2 - 1). Non-uniform
// alphas are floored to alpha_min first.
SetVolume set_volume_exact(const ApproxSet& aset);
SetVolume set_volume_uniform(std::size_t n, double alpha);

// Closed-form lower bound
//   a^{d-1} sqrt(d) / d! * ( a sqrt((d+1)/d) + (d+1)(1-a)/sqrt(d(d+1)) ),  d = n^2 - 1,
// evaluated in log space.
double paper_volume_bound(std::size_t n, double alpha_min);
// log of the above; -inf at alpha_min = 0
double paper_volume_log_bound(std::size_t n, double alpha_min);

enum class McTarget { hull, pieces, ppt };

const char* to_string(McTarget t);
McTarget mc_target_from_string(const std::string& s);

struct McResult {
    std::uint64_t samples = 0;
    std::uint64_t hits = 0;
    double fraction = 0.0;
    double stderr_ = 0.0;
    // pieces target only: points falling in two or more pieces
    std::uint64_t overlaps = 0;
    double overlap_fraction = 0.0;
    double overlap_stderr = 0.0;
};

inline constexpr std::size_t kMcChunk = 4096;

// Uniform points on the full simplex (normalized unit exponentials), one
// counter-based stream per chunk of kMcChunk samples keyed by (seed, chunk).
// The result depends only on (seed, samples), not on `threads`.
McResult mc_fraction(const ApproxSet& aset, std::uint64_t samples, std::uint64_t seed, McTarget target,
                     unsigned threads = 1);

// Deterministic uniform sample `index` of chunk `chunk`, exposed for tests.
std::vector<double> uniform_simplex_point(std::size_t dim, std::uint64_t seed, std::uint64_t chunk,
                                          std::uint64_t index);

struct VolumeReport {
    std::size_t n = 0;
    std::vector<double> alphas;
    double alpha_min = 0.0;
    SetVolume triangulation;
    double paper_bound = 0.0;
    double simplex_volume = 0.0;
    double triangulation_fraction = 0.0;
    double paper_fraction = 0.0;
    std::optional<McResult> mc;
    std::optional<McResult> mc_pieces;
    std::uint64_t mc_seed = 0;
};

VolumeReport volume_report(const ApproxSet& aset, std::optional<std::uint64_t> mc_samples = std::nullopt,
                           std::uint64_t seed = 0, unsigned threads = 1);

}  // namespace sepsimplex

#pragma once

#include <optional>
#include <vector>

#include "sepsimplex/state.hpp"

namespace sepsimplex {

// conv{P_m}: n^2 mutually orthogonal rank-one projectors summing to I.
// Every state in it is diagonal in the rays' basis, so it is described by
// barycentric coordinates beta_m = tr(P_m rho).
struct Simplex {
    std::size_t n = 0;
    std::vector<DensityMatrix> projectors;
    std::vector<CVector> rays;  // unit vectors with P_m = |ray_m><ray_m|

    std::size_t vertex_count() const { return projectors.size(); }
    // sum_m beta_m P_m
    ComplexMatrix state_at(std::span<const double> beta) const;
};

Simplex simplex_from_projectors(const std::vector<ComplexMatrix>& ps, std::size_t n, double tol = kDefaultTol);
Simplex simplex_from_rays(const std::vector<CVector>& rays, std::size_t n, double tol = kDefaultTol);

// |i>|j>
Simplex computational_simplex(std::size_t n);
// Weyl-Heisenberg maximally entangled basis (1/sqrt n) sum_j w^{aj} |j>|j+b>;
// for n = 2 this is the Bell basis Phi+, Phi-, Psi+, Psi-.
Simplex bell_simplex(std::size_t n);

// Unit vector spanning a rank-one projector (largest column, normalized).
CVector ray_of(const ComplexMatrix& projector);

std::vector<double> barycentric(const DensityMatrix& rho, const Simplex& s, double tol = kDefaultTol);

// Vertices of conv{ alpha_m P_m + (1 - alpha_m) rho0 , (I - P_m)/(n^2 - 1) }
// in barycentric coordinates: first n^2 are the pencil points, last n^2
// the complementary-face barycenters.
struct ApproxSet {
    Simplex simplex;
    std::vector<double> alphas;
    std::vector<std::vector<double>> vertices;

    std::size_t n() const { return simplex.n; }
    std::size_t dim() const { return simplex.n * simplex.n; }
    double alpha_min() const;
};

std::vector<std::vector<double>> approx_set_vertices(std::size_t n, std::span<const double> alphas);

// nullopt alphas: per-vertex PPT threshold of each ray.
ApproxSet approx_set(const Simplex& s, const std::optional<std::vector<double>>& alphas = std::nullopt);

enum class LpMode { floating, exact_rational };

struct HullMembership {
    bool inside = false;
    std::vector<double> weights;  // inside: beta = sum_j weights[j] vertices[j]
    // outside: normal . v + offset <= 0 for every vertex v, normal . beta + offset > 0
    std::vector<double> normal;
    double offset = 0.0;
    double phase_one_objective = 0.0;
    std::size_t pivots = 0;
};

HullMembership hull_membership(std::span<const double> beta, const ApproxSet& aset,
                               LpMode mode = LpMode::floating, double tol = kDefaultTol);

}  // namespace sepsimplex

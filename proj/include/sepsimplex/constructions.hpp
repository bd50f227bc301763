#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sepsimplex/pencil.hpp"

namespace sepsimplex {

// Phase data for the diagonal twirl U1 = diag(exp(i e_j phi)), U2 = conj(U1),
// phi = 2 pi / modulus. Pairwise differences of the exponents are distinct
// mod `modulus`, which is what makes the twirl keep only the entries
// |ii><mm| and |ik><ik|.
struct TwirlSchedule {
    std::size_t n = 0;
    std::vector<std::uint64_t> exponents;
    std::uint64_t modulus = 0;  // prime, > 2 * max(exponents)

    double phi() const;
};

// First n terms of the greedy (Mian-Chowla) B2 sequence 0, 1, 3, 7, 12, 20, ...
std::vector<std::uint64_t> mian_chowla(std::size_t n);
// Exhaustive check that e_i - e_j (i != j) are pairwise distinct and nonzero mod `modulus`.
bool differences_distinct_mod(const std::vector<std::uint64_t>& exponents, std::uint64_t modulus);
bool is_prime(std::uint64_t v);

TwirlSchedule sidon_exponents(std::size_t n);

// Unnormalized |s.sqrt(lambda)> (x) |sqrt(lambda)><...| in the Schmidt basis.
// `signs` multiplies the first-factor components; default all +1.
ComplexMatrix product_seed_projector(const SchmidtDecomposition& sd,
                                     const std::optional<std::vector<int>>& signs = std::nullopt);

// (1/N) sum_t (U1^t (x) U2^t) seed (U1^t (x) U2^t)^dagger, explicit N-term sum.
ComplexMatrix twirl_average(const ComplexMatrix& seed, const TwirlSchedule& sched);

// [sum_{i,m} l_i l_m |ii><mm| + sum_{i!=k} l_i l_k |ik><ik|] / (sum l)^2
DensityMatrix rho_p_closed_form(const SchmidtDecomposition& sd, double tol = kDefaultTol);

struct ProductTerm {
    double weight;
    CVector a;  // unit vector, first factor
    CVector b;  // unit vector, second factor
};

// Certificate that `target` = sum_t w_t |a_t><a_t| (x) |b_t><b_t|.
// The target is kept as a raw matrix so tampered certificates can still be
// loaded and reported on.
struct SeparableDecomposition {
    std::size_t n = 0;
    ComplexMatrix target;
    std::vector<ProductTerm> terms;
};

ComplexMatrix reassemble(const SeparableDecomposition& dec);

// rho(alpha_M) = alpha_M P + (1 - alpha_M) I/n^2 as twirl terms plus basis
// products |k>|r>, all in the Schmidt basis.
SeparableDecomposition threshold_decomposition(const SchmidtDecomposition& sd);

// The n^2 x n^2 block supported on |kk>, |kr>, |rk>, |rr> (k < r).
ComplexMatrix a_block(std::span<const double> lambdas, std::size_t k, std::size_t r);
ComplexMatrix a_block(const SchmidtDecomposition& sd, std::size_t k, std::size_t r);

// (I - P)/(n^2 - 1) as flattened A-block twirl terms plus basis products.
SeparableDecomposition complement_decomposition(const SchmidtDecomposition& sd);

// Rotates a Schmidt-basis certificate into the basis of the state sd came from.
SeparableDecomposition to_original_basis(const SeparableDecomposition& dec, const SchmidtDecomposition& sd);

struct VerifyReport {
    double max_residual = 0.0;
    double min_weight = 0.0;
    double weight_sum = 0.0;
    double max_leakage = 0.0;      // largest second Schmidt coefficient of a_t (x) b_t
    double max_norm_defect = 0.0;  // largest | ||a_t|| - 1 | or | ||b_t|| - 1 |
    std::size_t term_count = 0;
    bool pass = false;
    std::vector<std::string> violations;
};

VerifyReport verify_decomposition(const SeparableDecomposition& dec, double tol = 1e-10);

}  // namespace sepsimplex

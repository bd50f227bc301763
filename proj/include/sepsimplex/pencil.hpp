#pragma once

#include <vector>

#include "sepsimplex/state.hpp"

namespace sepsimplex {

// psi = sum_k lambdas[k] * basis_a(:,k) (x) basis_b(:,k)
struct SchmidtDecomposition {
    std::size_t n = 0;
    std::vector<double> lambdas;  // descending, nonnegative, sum of squares 1
    ComplexMatrix basis_a;
    ComplexMatrix basis_b;

    // Schmidt coefficients only, in the Schmidt basis (bases = identity).
    static SchmidtDecomposition from_coefficients(std::vector<double> lambdas, double tol = kDefaultTol);

    // sum_k lambda_k a_k (x) b_k
    CVector reconstruct() const;
    // sum_k lambda_k |kk>, the same state written in the Schmidt basis
    CVector schmidt_basis_vector() const;
    // U = basis_a (x) basis_b maps Schmidt-basis operators back to the original basis
    ComplexMatrix local_unitary() const;

    // Throws invariant_violation naming the first invariant that fails.
    void check(double tol = kDefaultTol) const;
};

SchmidtDecomposition schmidt_decompose(const PureState& psi, double tol = kDefaultTol);

struct PptThreshold {
    double max_product;  // M = lambda_1 * lambda_2
    double alpha;        // 1 / (1 + n^2 M)
};

PptThreshold ppt_threshold(const SchmidtDecomposition& sd);

struct BoundaryScan {
    double alpha_star;
    bool fully_ppt;  // no sign change on [0,1]; psi is a product state
};

// Bisection on the minimum partial-transpose eigenvalue along
// alpha P + (1 - alpha) I/n^2. Independent of the Schmidt route.
BoundaryScan ppt_boundary_scan(const PureState& psi, double tol = kDefaultTol);

}  // namespace sepsimplex

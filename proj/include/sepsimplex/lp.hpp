#pragma once

// Phase-1 simplex method with Bland's rule, generic over the scalar so the
// same code runs in double and in exact rationals (mpq_class).

#include <cstddef>
#include <string>
#include <vector>

#include "sepsimplex/error.hpp"

namespace sepsimplex::lp {

template <class T>
struct Feasibility {
    bool feasible = false;
    T objective{};             // optimal sum of artificials
    std::vector<T> x;          // structural solution (meaningful when feasible)
    std::vector<T> farkas;     // y with y^T A <= 0 and y^T b > 0 (meaningful when infeasible)
    std::size_t pivots = 0;
};

template <class T>
struct Tolerances {
    T pivot{};       // smallest admissible pivot / reduced cost magnitude
    T feasibility{}; // objective at or below this counts as feasible
};

// Decide whether {x >= 0 : A x = b} is nonempty. A is rows x cols, row-major.
template <class T>
Feasibility<T> phase_one(const std::vector<std::vector<T>>& a, const std::vector<T>& b, const Tolerances<T>& tol) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a.front().size() : 0;
    if (b.size() != rows) throw Error(ErrorKind::wrong_dimension, "LP right-hand side length");
    const std::size_t width = cols + rows + 1;  // structurals, artificials, rhs
    const std::size_t rhs = width - 1;

    std::vector<std::vector<T>> tab(rows, std::vector<T>(width, T(0)));
    std::vector<int> row_sign(rows, 1);
    std::vector<std::size_t> basis(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        if (a[i].size() != cols) throw Error(ErrorKind::wrong_dimension, "LP matrix is ragged");
        row_sign[i] = b[i] < T(0) ? -1 : 1;
        for (std::size_t j = 0; j < cols; ++j) tab[i][j] = row_sign[i] < 0 ? T(-a[i][j]) : a[i][j];
        tab[i][rhs] = row_sign[i] < 0 ? T(-b[i]) : b[i];
        tab[i][cols + i] = T(1);
        basis[i] = cols + i;
    }

    // reduced costs of min sum(artificials); last entry is -objective
    std::vector<T> cost(width, T(0));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) cost[j] -= tab[i][j];
    for (std::size_t i = 0; i < rows; ++i) cost[rhs] -= tab[i][rhs];

    Feasibility<T> out;
    const std::size_t cap = 10 * (rows + cols) * cols;
    for (;;) {
        std::size_t enter = width;
        for (std::size_t j = 0; j + 1 < width; ++j)
            if (cost[j] < T(-tol.pivot)) {
                enter = j;
                break;
            }
        if (enter == width) break;

        std::size_t leave = rows;
        T best{};
        for (std::size_t i = 0; i < rows; ++i) {
            if (!(tab[i][enter] > tol.pivot)) continue;
            T ratio = tab[i][rhs] / tab[i][enter];
            if (leave == rows || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        // phase 1 is bounded below by 0, so an entering column always has a pivot
        if (leave == rows) throw Error(ErrorKind::invariant_violation, "phase-1 LP reported unbounded");

        if (++out.pivots > cap) {
            throw Error(ErrorKind::iteration_limit, "LP exceeded " + std::to_string(cap) + " pivots");
        }

        const T piv = tab[leave][enter];
        for (auto& v : tab[leave]) v /= piv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == leave || tab[i][enter] == T(0)) continue;
            const T f = tab[i][enter];
            for (std::size_t j = 0; j < width; ++j) tab[i][j] -= f * tab[leave][j];
        }
        if (cost[enter] != T(0)) {
            const T f = cost[enter];
            for (std::size_t j = 0; j < width; ++j) cost[j] -= f * tab[leave][j];
        }
        basis[leave] = enter;
    }

    out.objective = T(-cost[rhs]);
    out.feasible = out.objective <= tol.feasibility;
    out.x.assign(cols, T(0));
    for (std::size_t i = 0; i < rows; ++i)
        if (basis[i] < cols) out.x[basis[i]] = tab[i][rhs];
    // dual of artificial i: 1 - reduced cost, mapped back through the row sign flip
    out.farkas.resize(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        T y = T(1) - cost[cols + i];
        out.farkas[i] = row_sign[i] < 0 ? T(-y) : y;
    }
    return out;
}

}  // namespace sepsimplex::lp

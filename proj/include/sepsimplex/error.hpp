#pragma once

#include <stdexcept>
#include <string>

namespace sepsimplex {

inline constexpr double kDefaultTol = 1e-9;

enum class ErrorKind {
    // caller-supplied data is malformed or violates a precondition
    wrong_dimension,
    not_hermitian,
    bad_trace,
    negative_eigenvalue,
    not_normalized,
    not_rank_one,
    out_of_range,
    not_orthogonal,
    incomplete,
    wrong_count,
    not_commuting,
    malformed_input,
    // something that must never happen did
    invariant_violation,
    iteration_limit,
};

const char* to_string(ErrorKind kind);

// Thrown by every public operation. `magnitude` carries the offending value
// (trace, residual, eigenvalue, ...) when one exists.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what, double magnitude = 0.0)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what),
          kind_(kind), magnitude_(magnitude) {}

    ErrorKind kind() const noexcept { return kind_; }
    double magnitude() const noexcept { return magnitude_; }

    bool is_internal() const noexcept {
        return kind_ == ErrorKind::invariant_violation || kind_ == ErrorKind::iteration_limit;
    }

private:
    ErrorKind kind_;
    double magnitude_;
};

}  // namespace sepsimplex

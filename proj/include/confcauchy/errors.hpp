#pragma once

#include <stdexcept>
#include <string>

namespace confcauchy {

/// Violated precondition or argument contract.
struct contract_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A user-supplied function returned a non-finite value.
struct evaluation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An iterative estimate failed to settle (diverging quotient sequence etc.).
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense factorization failed even after jitter.
struct factorization_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Requested time stepping violates the stability bound.
struct stability_error : std::runtime_error {
    stability_error(const std::string& msg, int min_steps)
        : std::runtime_error(msg), min_admissible_steps(min_steps) {}
    int min_admissible_steps;
};

/// Invariant that only a programming error can break.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

namespace tol {
// Default tolerance policy: absolute 1e-8 or relative 1e-6, whichever is
// looser, unless an operation reports its own error estimate.
inline constexpr double abs_default = 1e-8;
inline constexpr double rel_default = 1e-6;

inline bool close(double a, double b,
                  double abs_tol = abs_default, double rel_tol = rel_default) {
    double diff = a > b ? a - b : b - a;
    double mag  = (a < 0 ? -a : a) > (b < 0 ? -b : b) ? (a < 0 ? -a : a)
                                                      : (b < 0 ? -b : b);
    return diff <= abs_tol || diff <= rel_tol * mag;
}
} // namespace tol

} // namespace confcauchy

#pragma once

#include <stdexcept>
#include <string>

namespace iongate {

// Input validation failed before any computation started.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// The linear chain is unstable: A^xi has a non-positive eigenvalue.
struct InstabilityError : std::runtime_error {
    InstabilityError(int mode_index, double eigenvalue)
        : std::runtime_error("unstable chain: mode " + std::to_string(mode_index) +
                             " has non-positive eigenvalue " + std::to_string(eigenvalue)),
          mode_index(mode_index),
          eigenvalue(eigenvalue) {}
    int mode_index;
    double eigenvalue;
};

// No amplitude vector can reach the target phase (G numerically zero).
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Iterative solver did not converge within its budget.
struct SolverFailure : std::runtime_error {
    SolverFailure(const std::string& what, double residual)
        : std::runtime_error(what + " (last residual " + std::to_string(residual) + ")"),
          residual(residual) {}
    double residual;
};

}  // namespace iongate

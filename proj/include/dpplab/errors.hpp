#pragma once

#include <stdexcept>
#include <string>

namespace dpplab {

// Requested accuracy could not be certified (quadrature stall, tail bound
// failure, refinement disagreement).
class accuracy_error : public std::runtime_error {
public:
    explicit accuracy_error(const std::string& what) : std::runtime_error(what) {}
};

// Iterative eigensolver exceeded its rotation budget.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

// Simulation window too small; caller should enlarge and re-run.
class window_overflow_error : public std::runtime_error {
public:
    explicit window_overflow_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dpplab

#pragma once

#include <stdexcept>
#include <string>

namespace eit {

// Bad input: a precondition or a type invariant does not hold.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical procedure did not reach its accuracy target
// (quadrature doubling, step-size underflow, grid too coarse).
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// The problem itself is ill-posed: singular linear system, vanishing
// denominator, degenerate field configuration.
class SingularError : public std::runtime_error {
public:
    explicit SingularError(const std::string& what) : std::runtime_error(what) {}
};

// A field translated by the solver would leave the spatial grid.
class GridError : public ValidationError {
public:
    explicit GridError(const std::string& what) : ValidationError(what) {}
};

inline void require(bool ok, const std::string& what)
{
    if (!ok)
        throw ValidationError(what);
}

}  // namespace eit

#pragma once

#include <stdexcept>
#include <string>

namespace fuzzyprior {

enum class ErrorKind {
    Domain,         // evaluation point outside the function's interval
    Parameter,      // argument violates a documented precondition
    GridMismatch,   // binary operation on functions with different grids
    Validation,     // malformed input document
    Bracketing,     // root finder got no sign change
    Singularity,    // zero denominator in the inverse map
    NotADensity,    // result does not integrate to one
    Infeasible,     // calibration parameter outside its feasible range
    Degenerate,     // zero integral where a positive one is required
};

/// True for errors caused by bad input (as opposed to a numerical outcome).
constexpr bool is_validation(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::Domain:
    case ErrorKind::Parameter:
    case ErrorKind::GridMismatch:
    case ErrorKind::Validation:
        return true;
    default:
        return false;
    }
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// The inverse map produced a nonnegative function whose integral is not one.
class NotADensityError : public Error {
public:
    explicit NotADensityError(double integral)
        : Error(ErrorKind::NotADensity,
                "result is not a density: integral = " + std::to_string(integral)),
          integral_(integral) {}

    double integral() const noexcept { return integral_; }

private:
    double integral_;
};

/// A calibration input exceeds its feasibility bound; carries the bound.
class InfeasibleError : public Error {
public:
    InfeasibleError(const std::string& what, double bound)
        : Error(ErrorKind::Infeasible, what), bound_(bound) {}

    double bound() const noexcept { return bound_; }

private:
    double bound_;
};

}  // namespace fuzzyprior

#pragma once

#include <stdexcept>
#include <string>

namespace mixkin {

// Base class for all library errors. Each category maps to a CLI exit code.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid construction parameters (grids, quadratures, config values).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error("config: " + msg) {}
};

// Density fell below the floor; moments are undefined.
class DegenerateDensityError : public Error {
public:
    explicit DegenerateDensityError(const std::string& msg)
        : Error("degenerate density: " + msg) {}
};

// Physically inadmissible state reached (negative temperature, f < 0, ...).
class InvalidStateError : public Error {
public:
    explicit InvalidStateError(const std::string& msg) : Error("invalid state: " + msg) {}
};

// Iterative solve failed; carries the final residual.
class NonConvergenceError : public Error {
public:
    NonConvergenceError(const std::string& msg, double residual)
        : Error("no convergence: " + msg + " (residual " + std::to_string(residual) + ")"),
          final_residual(residual) {}
    double final_residual;
};

// Relaxation frequency below the admissibility bound nu >= lambda n / 2.
class ConstraintViolationError : public Error {
public:
    explicit ConstraintViolationError(const std::string& msg)
        : Error("frequency constraint: " + msg) {}
};

// Time step too large for the requested scheme.
class StepSizeError : public Error {
public:
    explicit StepSizeError(const std::string& msg) : Error("step size: " + msg) {}
};

// Distribution went negative beyond the clip band during a step.
class PositivityError : public Error {
public:
    explicit PositivityError(const std::string& msg) : Error("positivity: " + msg) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error("io: " + msg) {}
};

} // namespace mixkin

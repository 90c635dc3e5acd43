#pragma once

#include <stdexcept>
#include <string>

namespace cram {

// All failures are loud: out-of-range inputs, parse problems and numerical
// breakdowns throw instead of producing NaN/infinity sentinels.

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

struct ConvergenceError : Error {
    explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

// Evaluation requested too close to a pole; carries the pole index.
struct PoleProximityError : Error {
    int pole_index;
    PoleProximityError(const std::string& msg, int j) : Error(msg), pole_index(j) {}
};

struct SolverError : Error {
    explicit SolverError(const std::string& msg) : Error(msg) {}
};

// Grid too coarse to separate adjacent extrema.
struct ResolutionError : Error {
    explicit ResolutionError(const std::string& msg) : Error(msg) {}
};

} // namespace cram

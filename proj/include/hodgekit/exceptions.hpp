#pragma once

#include <stdexcept>
#include <string>

namespace hodgekit {

/// Malformed input data (mesh files, cochain files, bad arguments).
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Parse failure in a text format; carries the 1-based line number.
class ParseError : public InputError {
public:
    ParseError(int line_, const std::string& msg)
        : InputError("line " + std::to_string(line_) + ": " + msg), line(line_) {}
    int line;
};

/// Geometric preconditions violated (degenerate simplex, non-well-centered
/// mesh under the circumcentric scheme, missing vertex positions).
class GeometryError : public InputError {
public:
    explicit GeometryError(const std::string& msg) : InputError(msg) {}
};

/// Numerical failure: solver did not converge, factorization broke down,
/// eigensolver iteration cap exceeded.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// The kernel threshold fell inside a cluster of eigenvalues; the harmonic
/// dimension cannot be decided at the requested cutoff.
class KernelAmbiguityError : public NumericalError {
public:
    explicit KernelAmbiguityError(const std::string& msg) : NumericalError(msg) {}
};

} // namespace hodgekit

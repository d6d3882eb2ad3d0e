#pragma once

#include <stdexcept>
#include <string>

namespace frontlab {

/// Base class for all frontlab failures. Subclasses distinguish what went
/// wrong so callers (and the CLI exit-code mapping) can react precisely.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Operation requires a different parameter regime.
class RegimeError : public Error {
public:
    using Error::Error;
};

/// Initial-data geometry does not fit the grid.
class GeometryError : public Error {
public:
    using Error::Error;
};

/// A state left the invariant rectangle by more than rounding allows.
class StabilityError : public Error {
public:
    using Error::Error;
};

/// Not enough usable samples remain after windowing.
class WindowError : public Error {
public:
    using Error::Error;
};

/// The tracked u-front disappeared; signals a negative-speed regime.
class ExtinctionError : public Error {
public:
    using Error::Error;
};

/// A sign-change bracket does not actually bracket.
class BracketError : public Error {
public:
    using Error::Error;
};

/// Iterates or snapshots did not settle to the requested tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// A piecewise construction has no valid amplitude/angle solution.
class ConstructionError : public Error {
public:
    using Error::Error;
};

/// A numeric check that the theory says must hold came out false.
class AssertionError : public Error {
public:
    using Error::Error;
};

/// Malformed input file or schema mismatch.
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace frontlab

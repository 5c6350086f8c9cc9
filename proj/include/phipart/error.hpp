#pragma once

#include <stdexcept>
#include <string>

namespace phipart {

/// Base class for every error raised by the library. The CLI maps these to
/// exit code 2 (validation error).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// m = m0^d does not divide the sample count.
class IndivisibleSampleCount : public Error {
public:
    using Error::Error;
};

/// Tied coordinates at a cut make an exact equal-mass split impossible.
class DuplicateOverflow : public Error {
public:
    using Error::Error;
};

class NegativeRatio : public Error {
public:
    using Error::Error;
};

class BadRange : public Error {
public:
    using Error::Error;
};

class NoSolution : public Error {
public:
    using Error::Error;
};

/// A cell has zero reference mass but positive P-mass (P is not << Q).
class ZeroMass : public Error {
public:
    using Error::Error;
};

class ZeroDensity : public Error {
public:
    using Error::Error;
};

class BadParams : public Error {
public:
    using Error::Error;
};

class OracleFailure : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t row, std::size_t column)
        : Error(what + " (row " + std::to_string(row) + ", column " + std::to_string(column) + ")"),
          row_(row), column_(column) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

} // namespace phipart

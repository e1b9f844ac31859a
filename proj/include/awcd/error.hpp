// Copyright 2026 The AWCD Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AWCD_ERROR_HPP_
#define AWCD_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace awcd {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or option value (k too large, negative radius, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Mathematically undefined request (n = 1 curvature bound, mismatched dims).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Eigen-solver failure or non-finite intermediate result.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Sylvester coefficient with a vanishing eigenvalue sum.
class DegenerateMatrixError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// All curvatures equal: there is no trough and no Otsu split.
class DegenerateHistogramError : public Error {
public:
    using Error::Error;
};

/// Empty cloud where at least one point is required.
class EmptyInputError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Malformed input file. `line()` is 1-based for text, 0 when unknown;
/// `offset()` is the byte offset for binary payloads.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t offset)
        : Error(what), line_(line), offset_(offset) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t line_;
    std::size_t offset_;
};

} // namespace awcd

#endif // AWCD_ERROR_HPP_

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mtcurv {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression text. Carries the byte offset of the offending token.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& message, std::size_t offset)
        : Error(message + " (at offset " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Function name not in the supported set {sin, cos, tan, cot, exp, ln, sqrt}.
class UnknownFunctionError : public Error {
public:
    using Error::Error;
};

/// Expression references a symbol that was never declared.
class UnknownVariableError : public Error {
public:
    using Error::Error;
};

/// Evaluation found a variable with no binding in the environment.
class UnboundVariableError : public Error {
public:
    using Error::Error;
};

/// Real-arithmetic domain violation (ln of a non-positive value, division by
/// zero, cot at a multiple of pi, non-finite result, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Quaternion inversion requested for zero or a zero divisor.
class NotInvertibleError : public Error {
public:
    using Error::Error;
};

/// Point lies outside a chart's declared domain.
class OutOfDomainError : public Error {
public:
    using Error::Error;
};

/// A metric coefficient vanished (or the local frame degenerated) at a point.
class DegenerateMetricError : public Error {
public:
    using Error::Error;
};

/// Chart name is not one of the built-ins.
class UnknownChartError : public Error {
public:
    using Error::Error;
};

/// Lame parameters violate mu > 0, lambda > -(2/3) mu.
class InvalidLameParamsError : public Error {
public:
    using Error::Error;
};

/// Definition or fixture file violates the documented schema.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// Filesystem read/write failure.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace mtcurv

#pragma once

#include <stdexcept>
#include <string>

namespace tomoprior {

// Base of all toolkit errors. CLI maps the hierarchy onto exit codes:
// ValidationError -> 1, IoError -> 2, NumericalError -> 3.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : Error {
    using Error::Error;
};

// Malformed file header or unparsable content.
struct FormatError : ValidationError {
    using ValidationError::ValidationError;
};

// Payload size disagrees with the declared dimensions.
struct LengthError : ValidationError {
    using ValidationError::ValidationError;
};

struct BoundsError : ValidationError {
    using ValidationError::ValidationError;
};

struct GeometryError : ValidationError {
    using ValidationError::ValidationError;
};

struct SizeError : ValidationError {
    using ValidationError::ValidationError;
};

struct RankError : ValidationError {
    using ValidationError::ValidationError;
};

struct DegenerateSpanError : ValidationError {
    using ValidationError::ValidationError;
};

struct ConfigError : ValidationError {
    using ValidationError::ValidationError;
};

struct UsageError : ValidationError {
    using ValidationError::ValidationError;
};

struct MetricError : ValidationError {
    using ValidationError::ValidationError;
};

struct IoError : Error {
    using Error::Error;
};

// A non-finite value surfaced where only finite data is allowed.
struct NumericalError : Error {
    using Error::Error;
};

} // namespace tomoprior

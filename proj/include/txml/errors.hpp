#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace txml {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numeric input outside a model's validity region (eps_r < 1, w/h <= 0, ...).
struct DomainError : Error {
    using Error::Error;
};

// Evaluation at or past a pole of a correction factor.
struct SingularityError : DomainError {
    using DomainError::DomainError;
};

// Structurally inconsistent configuration (both/neither length forms,
// invalid layer layout, unexpected fixed parameters, ...).
struct ConfigError : Error {
    using Error::Error;
};

// Requested line-model kind is not registered.
struct UnknownKindError : ConfigError {
    using ConfigError::ConfigError;
};

// Malformed persisted file; carries the 1-based offending line when known.
struct ParseError : Error {
    explicit ParseError(const std::string& what, std::size_t line_no = 0)
        : Error(line_no ? what + " (line " + std::to_string(line_no) + ")" : what),
          line(line_no) {}
    std::size_t line;
};

// Model file declares an unsupported format version.
struct VersionError : ParseError {
    using ParseError::ParseError;
};

// Model file ends before all declared content was read.
struct TruncatedFileError : ParseError {
    using ParseError::ParseError;
};

// Stored matrix/vector shapes disagree with the declared layout.
struct DimensionError : ParseError {
    using ParseError::ParseError;
};

// Filesystem failure; message includes the path.
struct IoError : Error {
    using Error::Error;
};

// Training loss became non-finite.
struct DivergenceError : Error {
    DivergenceError(const std::string& what, long at_epoch)
        : Error(what + " (epoch " + std::to_string(at_epoch) + ")"), epoch(at_epoch) {}
    long epoch;
};

// Fewer distinct samples than the fit requires.
struct InsufficientDataError : Error {
    using Error::Error;
};

// Scaler fit over a range with min == max.
struct DegenerateRangeError : Error {
    using Error::Error;
};

// Command-line arguments are structurally invalid (maps to exit code 2).
struct UsageError : Error {
    using Error::Error;
};

}  // namespace txml

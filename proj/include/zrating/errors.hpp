#pragma once

#include <stdexcept>
#include <string>

namespace zrating {

// Process exit categories used by the batch front-end.
enum class ErrorCategory {
    validation = 1,  // schema, parse, configuration, bad inputs
    io = 2,          // file system failures
    numerical = 3,   // fit failures, degenerate samples, singular systems
};

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& message)
        : std::runtime_error(message), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }
    int exit_code() const noexcept { return static_cast<int>(category_); }

private:
    ErrorCategory category_;
};

// -- validation

class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& message)
        : Error(ErrorCategory::validation, message) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& message)
        : Error(ErrorCategory::validation, message) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& message)
        : Error(ErrorCategory::validation, message) {}
};

// Non-finite or otherwise inadmissible input value.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& message)
        : Error(ErrorCategory::validation, message) {}
};

// Mismatched vector/matrix dimensions.
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& message)
        : Error(ErrorCategory::validation, message) {}
};

// Key absent from a fitted artifact (e.g. unknown industry id).
class LookupError : public Error {
public:
    explicit LookupError(const std::string& message)
        : Error(ErrorCategory::validation, message) {}
};

// -- I/O

class IoError : public Error {
public:
    explicit IoError(const std::string& message)
        : Error(ErrorCategory::io, message) {}
};

// -- numerical / fit

class FitError : public Error {
public:
    explicit FitError(const std::string& message)
        : Error(ErrorCategory::numerical, message) {}
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& message)
        : Error(ErrorCategory::numerical, message) {}
};

// Sample carries no usable spread (all values equal, zero variance, ...).
class DegenerateSampleError : public Error {
public:
    explicit DegenerateSampleError(const std::string& message)
        : Error(ErrorCategory::numerical, message) {}
};

class InsufficientSampleError : public Error {
public:
    explicit InsufficientSampleError(const std::string& message)
        : Error(ErrorCategory::numerical, message) {}
};

}  // namespace zrating

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tcprof {

enum class ErrorKind { Validation, Parse, Compute, Io };

/// Base of every error raised by the library. The kind maps onto CLI exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& message, std::string field = {})
        : Error(ErrorKind::Validation, message), field_(std::move(field)) {}

    /// Name of the offending configuration field, empty when not applicable.
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& file, std::size_t line, const std::string& what)
        : Error(ErrorKind::Parse, file + ":" + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class ComputeError : public Error {
public:
    ComputeError(const std::string& message, double residual = 0.0)
        : Error(ErrorKind::Compute, message), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& message) : Error(ErrorKind::Io, message) {}
};

}  // namespace tcprof

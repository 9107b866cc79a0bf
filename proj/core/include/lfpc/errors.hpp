#pragma once

#include <stdexcept>
#include <string>

namespace lfpc {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Two values from different field contexts were combined.
class FieldMismatchError : public Error {
public:
    explicit FieldMismatchError(const std::string& msg) : Error(msg) {}
};

/// An argument was outside the operation's domain.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// An exact value could not be compared or rendered as requested
/// (e.g. ordering a cyclotomic value that is not rational).
class DiagnosticError : public Error {
public:
    explicit DiagnosticError(const std::string& msg) : Error(msg) {}
};

/// A truncation window was too small for the requested computation.
class WindowError : public Error {
public:
    explicit WindowError(const std::string& msg) : Error(msg) {}
};

} // namespace lfpc

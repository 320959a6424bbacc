#pragma once

#include <stdexcept>
#include <string>

namespace furst {

enum class ErrorKind {
    parameter,
    domain,
    precondition,
    precision,
    resource,
    consistency,
    structural,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base of every error raised by the library. The CLI maps all of them to
/// exit code 2 and prints `{"error": kind, "message": ...}`.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// An interval enclosure was too wide to decide a comparison.
class PrecisionError : public Error {
public:
    PrecisionError(const std::string& message, unsigned long required_bits)
        : Error(ErrorKind::precision,
                message + " (need at least " + std::to_string(required_bits) + " bits)"),
          required_bits_(required_bits) {}

    unsigned long required_bits() const noexcept { return required_bits_; }

private:
    unsigned long required_bits_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
    if (!condition) {
        throw Error(kind, message);
    }
}

}  // namespace furst

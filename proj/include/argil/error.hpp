#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace argil {

//! Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

//! Malformed input text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
public:
    ParseError(std::string const &message, std::size_t line, std::size_t column)
    : Error(format(message, line, column))
    , line_(line)
    , column_(column) { }

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
    static std::string format(std::string const &message, std::size_t line, std::size_t column) {
        if (line == 0) { return message; }
        return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
    }

    std::size_t line_;
    std::size_t column_;
};

//! Well-formed input that violates a structural invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

//! A configured size cap was exceeded; distinct from an empty result.
class ResourceLimit : public Error {
public:
    using Error::Error;
};

//! The cooperative deadline expired during a search.
class Timeout : public Error {
public:
    Timeout() : Error("deadline exceeded") { }
};

//! A learning task has no solution within the configured bounds.
class Unsatisfiable : public Error {
public:
    using Error::Error;
};

//! Optional wall-clock deadline polled by the search loops.
class Deadline {
public:
    using Clock = std::chrono::steady_clock;

    Deadline() = default;
    explicit Deadline(Clock::time_point at) : at_(at) { }

    static Deadline after(double seconds) {
        return Deadline(Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds)));
    }

    [[nodiscard]] bool expired() const { return at_ && Clock::now() >= *at_; }
    void check() const {
        if (expired()) { throw Timeout(); }
    }

private:
    std::optional<Clock::time_point> at_;
};

} // namespace argil

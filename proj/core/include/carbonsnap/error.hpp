#pragma once

#include <stdexcept>
#include <string>

namespace carbonsnap {

// Base for every error the library raises on bad input or failed I/O.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A value or combination of values violates a domain invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Text input could not be parsed. Carries the origin (usually a file path),
// 1-based line and column where known; 0 means "not applicable".
class ParseError : public Error {
public:
    ParseError(std::string origin, std::size_t line, std::size_t column, const std::string& message);

    const std::string& origin() const noexcept { return origin_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::string origin_;
    std::size_t line_;
    std::size_t column_;
};

// Transport failure or non-success HTTP status from a remote service.
class NetworkError : public Error {
public:
    explicit NetworkError(const std::string& message, int status = 0)
        : Error(message), status_(status) {}

    // HTTP status, or 0 when the request never produced a response.
    int status() const noexcept { return status_; }

private:
    int status_;
};

}  // namespace carbonsnap

#ifndef POBK_ERROR_HPP
#define POBK_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pobk {

/// Base for every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree.
class dimension_error : public error {
public:
    using error::error;
};

/// An argument violates an operation's precondition.
class invalid_argument : public error {
public:
    using error::error;
};

/// Matrix Market ingest failure. `line()` is 1-based; 0 means end of input.
class parse_error : public error {
public:
    parse_error(std::size_t line, const std::string& what)
        : error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Input is well-formed Matrix Market but uses a field we do not support.
class unsupported_format : public parse_error {
public:
    using parse_error::parse_error;
};

/// A block or row with no nonzeros where one is required.
class zero_row_error : public invalid_argument {
public:
    zero_row_error(std::size_t index, const std::string& what)
        : invalid_argument(what + " " + std::to_string(index)), index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

} // namespace pobk

#endif // POBK_ERROR_HPP

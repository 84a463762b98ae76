#pragma once

#include <stdexcept>
#include <string>

namespace costas {

// Base for every error raised by the library. Precondition violations use
// std::invalid_argument directly; the types below carry domain meaning.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularMatrixError : public Error {
public:
    using Error::Error;
};

class DuplicateDotError : public Error {
public:
    using Error::Error;
};

class ConstructionError : public Error {
public:
    using Error::Error;
};

class OverflowError : public Error {
public:
    using Error::Error;
};

// Malformed input files. The message names the offending line.
class FormatError : public Error {
public:
    FormatError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace costas

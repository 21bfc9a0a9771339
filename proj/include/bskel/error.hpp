#ifndef BSKEL_ERROR_HPP
#define BSKEL_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace bskel {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegeneratePair : public Error {
public:
    DegeneratePair() : Error("degenerate pair: the two generating points coincide") {}
};

class DomainError : public Error {
public:
    using Error::Error;
};

class DuplicatePoints : public Error {
public:
    DuplicatePoints(std::size_t first, std::size_t second)
        : Error("duplicate points at indices " + std::to_string(first) + " and " +
                std::to_string(second)),
          first_(first), second_(second) {}

    std::size_t first() const noexcept { return first_; }
    std::size_t second() const noexcept { return second_; }

private:
    std::size_t first_;
    std::size_t second_;
};

class EmptyGrid : public Error {
public:
    EmptyGrid() : Error("beta grid is empty") {}
};

class PackingFailure : public Error {
public:
    using Error::Error;
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

class GridMismatch : public Error {
public:
    using Error::Error;
};

class InsufficientBaseline : public Error {
public:
    using Error::Error;
};

/// Curve does not cover the beta range an operation needs.
class InsufficientCoverage : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("parse error at line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace bskel

#endif

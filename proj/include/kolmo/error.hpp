#pragma once

#include <stdexcept>
#include <string>

namespace kolmo {

/// Broad failure classes. The CLI maps them onto stable exit codes.
enum class ErrorKind {
    usage,      // bad flags or unknown command/kind
    data,       // malformed or out-of-contract input data
    numeric,    // singular regression, degenerate statistics
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct UsageError : Error {
    explicit UsageError(const std::string& w) : Error(ErrorKind::usage, w) {}
};

// Value outside the mathematical domain of an operation (non-positive price,
// zero variance, zero-length rate denominator).
struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error(ErrorKind::data, w) {}
};

// Wrong length or count.
struct SizeError : Error {
    explicit SizeError(const std::string& w) : Error(ErrorKind::data, w) {}
};

// Symbol, digit or value outside its admissible range.
struct RangeError : Error {
    explicit RangeError(const std::string& w) : Error(ErrorKind::data, w) {}
};

// Corrupted compressed blob or file header.
struct IntegrityError : Error {
    explicit IntegrityError(const std::string& w) : Error(ErrorKind::data, w) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error(ErrorKind::data, w) {}
};

struct NumericError : Error {
    explicit NumericError(const std::string& w) : Error(ErrorKind::numeric, w) {}
};

// A REP stage failed; the message names the stage.
struct PipelineError : Error {
    PipelineError(ErrorKind kind, const std::string& w) : Error(kind, w) {}
};

}  // namespace kolmo

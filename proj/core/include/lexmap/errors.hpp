#pragma once

#include <stdexcept>
#include <string>

namespace lexmap {

// Caller broke an operation's contract: bad dimensions, invalid options,
// unresolvable paths, preconditions not met.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Value outside an operation's mathematical domain (e.g. zero-norm vector).
class DomainError : public ContractError {
public:
    using ContractError::ContractError;
};

// Malformed input data. Carries a 1-based line number when one is known.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what, long line = -1)
        : std::runtime_error(what), line_(line) {}
    long line() const noexcept { return line_; }

private:
    long line_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Non-finite arithmetic detected during a solve or training run.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Process exit codes used by the command-line front end.
enum ExitCode : int {
    kExitOk = 0,
    kExitContract = 2,
    kExitData = 3,
    kExitNumeric = 4,
};

}  // namespace lexmap

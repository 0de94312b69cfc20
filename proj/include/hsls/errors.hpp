#pragma once

#include <stdexcept>
#include <string>

namespace hsls {

/// Mismatched vector/matrix dimensions between arguments.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Violated structural invariant (cardinalities, weights, parameters).
class InvalidSpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Neighbor budget outside the valid range for the node count.
class BudgetError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Requested enumeration or sampling exceeds a feasibility cap.
class FeasibilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Iteration produced non-finite values; carries the offending iteration.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& what, int iteration)
        : std::runtime_error(what + " (iteration " + std::to_string(iteration) + ")"),
          iteration_(iteration) {}

    int iteration() const noexcept { return iteration_; }

private:
    int iteration_;
};

/// File parse failure with file and line context.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string file, long line, const std::string& what)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + what),
          file_(std::move(file)),
          line_(line) {}

    const std::string& file() const noexcept { return file_; }
    long line() const noexcept { return line_; }

private:
    std::string file_;
    long line_;
};

}  // namespace hsls

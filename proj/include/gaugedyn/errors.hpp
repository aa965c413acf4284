#pragma once

#include <stdexcept>
#include <string>

namespace gaugedyn {

// Input outside a function's mathematical domain, or a violated precondition.
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

// An iteration failed to reach its tolerance within the hard cap.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

// A computation would exceed an explicit work or representability budget.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

// Host region too small relative to the requested box size.
class TooCoarseError : public DomainError {
public:
    explicit TooCoarseError(const std::string& msg) : DomainError(msg) {}
};

// Requested nesting depth pushes image scales past double representability.
class DepthOverflowError : public BudgetError {
public:
    explicit DepthOverflowError(const std::string& msg) : BudgetError(msg) {}
};

// A construction step produced no boxes where at least one is required.
class EmptyPackingError : public std::runtime_error {
public:
    explicit EmptyPackingError(const std::string& msg) : std::runtime_error(msg) {}
};

// Sample set too degenerate to estimate anything from.
class DegenerateInputError : public DomainError {
public:
    explicit DegenerateInputError(const std::string& msg) : DomainError(msg) {}
};

}  // namespace gaugedyn

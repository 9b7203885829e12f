#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace polyagg {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "error"; }
};

/// Wrong lengths, out-of-range letters, incompatible shapes, size caps.
class DimensionError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "dimension"; }
};

/// An operation was called outside its stated preconditions.
class PreconditionError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "precondition"; }
};

/// Malformed serialized input.
class FormatError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "format"; }
};

/// A computation that would contradict a proven structural statement.
/// Seeing one means either the input violated a precondition that was not
/// checkable up front, or there is a bug.
class InternalContradiction : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "internal_contradiction"; }
};

/// Exact work exceeds the configured budget (tuples, nodes, or cells).
class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string& what, std::uint64_t requested, std::uint64_t budget)
        : Error(what + ": requires " + std::to_string(requested) + " units, budget is "
                + std::to_string(budget)),
          requested_(requested),
          budget_(budget) {}

    const char* kind() const noexcept override { return "budget_exceeded"; }
    std::uint64_t requested() const noexcept { return requested_; }
    std::uint64_t budget() const noexcept { return budget_; }

private:
    std::uint64_t requested_;
    std::uint64_t budget_;
};

}  // namespace polyagg

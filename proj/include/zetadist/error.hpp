#pragma once

#include <stdexcept>
#include <string>

namespace zetadist {

/// Precondition violation on a caller-supplied argument.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Request exceeds a configured memory or evaluation budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical procedure failed to reach its tolerance; message carries diagnostics.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Internal consistency check failed. Indicates a bug, not bad input.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Result would not fit in a double.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

}  // namespace zetadist

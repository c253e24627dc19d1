#pragma once

#include <stdexcept>
#include <string>

namespace seshadri {

/// Arguments outside the mathematical domain of an operation
/// (square n, non-abnormal triple, hypothesis violation, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Two divisor classes that live on blow-ups of different numbers of points.
class DimensionError : public std::invalid_argument {
public:
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Structurally invalid input (empty or all-zero vectors, unsorted multiplicities, bad files).
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// An internal safety cap was exceeded. Never expected on valid input.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

} // namespace seshadri

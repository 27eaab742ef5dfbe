#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace trinerve {

// Malformed or inconsistent mathematical data (bad tables, ill-typed cells, ...).
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An enumeration would exceed the configured simplex budget.
class ResourceError : public std::runtime_error {
public:
    ResourceError(const std::string& what, int dimension, std::uint64_t requested)
        : std::runtime_error(what), dimension_(dimension), requested_(requested) {}
    int dimension() const { return dimension_; }
    std::uint64_t requested() const { return requested_; }

private:
    int dimension_;
    std::uint64_t requested_;
};

// Unparseable input or arguments outside the valid range.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A validation that was asked for did not pass.
class VerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace trinerve

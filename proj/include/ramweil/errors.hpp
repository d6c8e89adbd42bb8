#pragma once

#include <stdexcept>
#include <string>

namespace ramweil {

// Bad mathematical input: wrong preconditions, invalid parameters.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& m) : std::runtime_error(m) {}
};

// An exhaustive enumeration would exceed the configured cap.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& m) : std::runtime_error(m) {}
};

// A quantity that must round to an integer failed its tolerance.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& m) : std::runtime_error(m) {}
};

// Two independent computation routes disagreed.
struct ConsistencyError : std::runtime_error {
    explicit ConsistencyError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace ramweil

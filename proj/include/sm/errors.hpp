#pragma once

#include <stdexcept>
#include <string>

namespace sm {

// Bad input data: unreadable files, invariant violations, malformed CSV.
// The CLI maps this to exit code 1.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Bad invocation: missing required inputs, invalid flag values.
// The CLI maps this to exit code 2.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sm

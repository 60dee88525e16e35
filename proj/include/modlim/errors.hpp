#pragma once

#include <stdexcept>
#include <string>

namespace modlim {

/// Malformed or inconsistent input (bad dimensions, failed validation, ...).
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A configured size cap was exceeded.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A state that should be unreachable; signals a bug, not bad input.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace modlim

#pragma once

/**
 * @file errors.hpp
 * @brief Error hierarchy shared by all modules.
 *
 * Two classes of failure are distinguished because the CLI maps them to
 * different exit codes:
 *  - ValidationError: bad user input or malformed configuration (exit 2);
 *  - InvariantError: an internal guarantee was found broken while running,
 *    e.g. an achieved rate below its proven floor (exit 3).
 */

#include <stdexcept>
#include <string>

namespace moducom {

/// Raised when inputs, configuration, or file contents fail validation.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a theorem-backed or structural invariant is violated at runtime.
class InvariantError : public std::logic_error {
public:
    explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

/// Throw ValidationError with a message unless the condition holds.
inline void require(bool condition, const std::string& message) {
    if (!condition) throw ValidationError(message);
}

} // namespace moducom

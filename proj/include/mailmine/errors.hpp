#pragma once

#include <stdexcept>
#include <string>

namespace mailmine {

// Recoverable problems with user-supplied data: bad paths, malformed
// headers, out-of-range config. Maps to exit code 2 at the CLI boundary.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Broken internal invariants. Maps to exit code 3.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

} // namespace mailmine

#pragma once

#include <stdexcept>
#include <string>

namespace iser {

/// Bad invocation: unknown method or generator names, malformed flag values.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid data or configuration discovered while processing inputs:
/// unreadable files, parse failures, contract violations such as psi > n.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace iser

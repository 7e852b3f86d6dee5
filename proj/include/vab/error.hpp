#pragma once

#include <stdexcept>
#include <string>

namespace vab {

// Malformed user input (bad file, bad rational, inconsistent dimensions). CLI exit 2.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A computation left the degree window (or the a(-1) cap). Recoverable: rebuild
// with a larger window. CLI exit 3.
struct window_error : std::runtime_error {
    explicit window_error(const std::string& what) : std::runtime_error(what) {}
};

// A guaranteed property of the construction failed. This is never a user
// error: something the construction promises did not hold, so abort loudly.
// CLI exit 4.
struct consistency_error : std::runtime_error {
    explicit consistency_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace vab

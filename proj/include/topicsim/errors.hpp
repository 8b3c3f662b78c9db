#pragma once

#include <stdexcept>
#include <string>

namespace topicsim {

// Parameter or input validation failure (CLI exit code 1).
struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A configured resource cap was exceeded (CLI exit code 2).
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File could not be read, written or parsed (CLI exit code 3).
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace topicsim

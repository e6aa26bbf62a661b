#pragma once

#include <stdexcept>
#include <string>

namespace gbi {

// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad dimension, malformed settings, values out of domain.
struct invalid_argument_error : error {
    using error::error;
};

// A configured cap (oracle size, enumeration count, memory) was exceeded.
struct resource_limit_error : error {
    using error::error;
};

// Degenerate directions, non-tiling regions, non-finite results.
struct numerical_error : error {
    using error::error;
};

} // namespace gbi

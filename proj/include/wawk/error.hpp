#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wawk {

/// Position in a text source, 1-based. Zero means "unknown".
struct SourceLoc {
    std::size_t line = 0;
    std::size_t column = 0;
};

std::string to_string(const SourceLoc& loc);

/// Common base so front-ends can catch every toolchain failure in one place.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace wawk

#pragma once

#include <string_view>

namespace wawk {

/// Source of scripts/cpi.wawk, compiled in so `run --all` and the tests
/// work without the file on disk.
std::string_view cpi_script();

} // namespace wawk

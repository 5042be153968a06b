#pragma once

#include <string_view>

namespace obsint {

// Warnings go to stderr unless silenced (tests silence them).
void warn(std::string_view message);
void set_warnings_enabled(bool enabled);

}  // namespace obsint

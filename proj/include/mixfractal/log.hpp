#pragma once

#include <string_view>

namespace mixfractal::log {

enum class Level { quiet = 0, info = 1, debug = 2 };

/// Read once from MIXFRACTAL_LOG (quiet|info|debug, default quiet).
Level level();

void info(std::string_view message);
void debug(std::string_view message);

}  // namespace mixfractal::log

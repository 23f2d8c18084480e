#include "mixfractal/log.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

namespace mixfractal::log {

Level level() {
  static const Level cached = [] {
    const char* env = std::getenv("MIXFRACTAL_LOG");
    if (env == nullptr) return Level::quiet;
    const std::string value(env);
    if (value == "debug") return Level::debug;
    if (value == "info") return Level::info;
    return Level::quiet;
  }();
  return cached;
}

void info(std::string_view message) {
  if (level() >= Level::info) std::cerr << "mixfractal: info: " << message << '\n';
}

void debug(std::string_view message) {
  if (level() >= Level::debug) std::cerr << "mixfractal: debug: " << message << '\n';
}

}  // namespace mixfractal::log

#pragma once

namespace mixfractal {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace mixfractal

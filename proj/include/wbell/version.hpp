#pragma once

namespace wbell {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace wbell

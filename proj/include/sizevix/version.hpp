#pragma once

namespace sizevix {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sizevix

#pragma once

namespace colombeau {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace colombeau

#pragma once

namespace bufcode {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bufcode

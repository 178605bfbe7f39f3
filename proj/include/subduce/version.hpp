#pragma once

namespace subduce {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace subduce

#pragma once

namespace viag {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace viag

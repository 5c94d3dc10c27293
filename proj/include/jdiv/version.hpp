#pragma once

namespace jdiv {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace jdiv

#pragma once

namespace wscale {

inline constexpr const char* kToolName = "wscale";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace wscale

#pragma once

namespace robusttrend {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace robusttrend

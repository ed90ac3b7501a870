#pragma once

namespace bdvp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bdvp

#pragma once

namespace toric_af {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace toric_af

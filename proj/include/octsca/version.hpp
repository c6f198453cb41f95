#pragma once

namespace octsca {

inline constexpr const char* kVersion = "0.1.0";

} // namespace octsca

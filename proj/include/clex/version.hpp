#pragma once

namespace clex {

inline constexpr const char* kCodeVersion = "0.1.0";

}  // namespace clex

#pragma once

namespace premise {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace premise

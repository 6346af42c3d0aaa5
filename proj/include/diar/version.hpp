#pragma once

namespace diar {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace diar

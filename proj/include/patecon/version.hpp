#pragma once

namespace patecon {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace patecon

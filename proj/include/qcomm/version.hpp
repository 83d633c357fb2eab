#pragma once

namespace qcomm {

inline constexpr const char* kVersion = "0.1.0";

} // namespace qcomm

#pragma once

namespace sftlab {

inline constexpr const char* kVersion = "sftlab 0.1.0";

}  // namespace sftlab

#pragma once

namespace ncg {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ncg

#pragma once

namespace mdmimo {
inline constexpr const char* kVersion = "0.1.0";
}

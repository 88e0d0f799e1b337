#pragma once

namespace choquard {
inline constexpr const char* kVersion = "1.0.0";
}

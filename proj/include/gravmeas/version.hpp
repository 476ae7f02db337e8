#pragma once

namespace gravmeas {
inline constexpr const char* kVersion = "0.1.0";
}

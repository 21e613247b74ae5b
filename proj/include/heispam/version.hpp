#pragma once

namespace heispam {
inline constexpr const char* kVersion = "0.1.0";
}

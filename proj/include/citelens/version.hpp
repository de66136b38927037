#pragma once

#include <string_view>

namespace citelens {
inline constexpr std::string_view kVersion = "0.1.0";
}

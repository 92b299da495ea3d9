#pragma once

namespace smab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace smab

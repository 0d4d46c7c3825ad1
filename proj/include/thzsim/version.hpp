#pragma once

namespace thzsim {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace thzsim

#pragma once

namespace tonguelock {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tonguelock

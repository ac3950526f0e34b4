#pragma once

namespace lsskit {

inline constexpr const char* kToolVersion = "lsskit 0.1.0";

}  // namespace lsskit

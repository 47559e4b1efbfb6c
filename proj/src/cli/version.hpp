#pragma once

namespace erk::cli {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace erk::cli

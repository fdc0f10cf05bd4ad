#pragma once

namespace qpovm {

inline constexpr const char* kToolName = "qpovm";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace qpovm

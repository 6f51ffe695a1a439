#pragma once

namespace gdfractal {

inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace gdfractal

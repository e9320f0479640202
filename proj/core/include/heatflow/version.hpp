#pragma once

namespace heatflow {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace heatflow

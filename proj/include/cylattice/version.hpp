#pragma once

namespace cylattice {

inline constexpr const char* kVersion = "0.1.0";

} // namespace cylattice

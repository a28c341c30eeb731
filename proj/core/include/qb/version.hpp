#pragma once

namespace qb {

inline constexpr const char* kVersion = "0.1.0";

} // namespace qb

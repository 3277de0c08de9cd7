#pragma once

#include <cstdint>

namespace selffib {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

} // namespace selffib

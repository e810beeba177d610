#pragma once

#include <cstddef>
#include <cstdint>

namespace fog {

using TaskId = std::uint64_t;
using Slot = std::int64_t;
using Arm = std::size_t;

}  // namespace fog

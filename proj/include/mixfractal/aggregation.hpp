#pragma once

#include <cstddef>
#include <vector>

#include "mixfractal/trace.hpp"

namespace mixfractal {

inline constexpr std::size_t kDefaultMinBlocks = 16;

struct ScaleLadder {
  std::vector<std::size_t> block_sizes;  // strictly increasing
};

/// Non-overlapping block sums: out[k] = in[k*block] + ... + in[k*block+block-1].
/// Trailing samples that do not fill a whole block are discarded.
TraceSeries aggregate(const TraceSeries& series, std::size_t block);

/// Block sizes 1, 2, 4, ... while length / block >= min_blocks.
ScaleLadder dyadic_ladder(std::size_t length, std::size_t min_blocks = kDefaultMinBlocks);

}  // namespace mixfractal

#include "mixfractal/aggregation.hpp"

#include <string>

#include "mixfractal/error.hpp"

namespace mixfractal {

TraceSeries aggregate(const TraceSeries& series, std::size_t block) {
  if (series.kind != SeriesKind::increments) {
    throw KindError("aggregate expects an increments series");
  }
  if (block == 0) throw SizeError("block size must be positive");
  if (block > series.size()) {
    throw SizeError("block size " + std::to_string(block) + " exceeds series length " +
                    std::to_string(series.size()));
  }
  const std::size_t count = series.size() / block;
  TraceSeries out{{}, SeriesKind::increments, series.meta};
  out.values.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    double sum = 0.0;
    const double* first = series.values.data() + k * block;
    for (std::size_t i = 0; i < block; ++i) sum += first[i];
    out.values[k] = sum;
  }
  return out;
}

ScaleLadder dyadic_ladder(std::size_t length, std::size_t min_blocks) {
  if (min_blocks == 0) throw SizeError("min_blocks must be positive");
  if (length < 2 * min_blocks) {
    throw InsufficientDataError("series of length " + std::to_string(length) +
                                " is too short for a scale ladder with " +
                                std::to_string(min_blocks) + " blocks per level");
  }
  ScaleLadder ladder;
  for (std::size_t block = 1; length / block >= min_blocks; block *= 2) {
    ladder.block_sizes.push_back(block);
  }
  return ladder;
}

}  // namespace mixfractal

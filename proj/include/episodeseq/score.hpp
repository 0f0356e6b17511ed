#pragma once

#include <cstddef>
#include <cstdint>

namespace episodeseq {

/// Units saved by encoding the f*N events of an N-node episode through one
/// table row (2N + 1 + f units) instead of through 1-node rows.
constexpr std::int64_t score(std::size_t size, std::size_t frequency) {
  const auto n = static_cast<std::int64_t>(size);
  const auto f = static_cast<std::int64_t>(frequency);
  return f * n - (2 * n + 1 + f);
}

/// Table cost of one row: size, N symbols, N-1 gaps, frequency, f starts.
constexpr std::int64_t row_length(std::size_t size, std::size_t frequency) {
  return 2 * static_cast<std::int64_t>(size) + 1 + static_cast<std::int64_t>(frequency);
}

}  // namespace episodeseq

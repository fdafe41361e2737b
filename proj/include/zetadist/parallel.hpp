#pragma once

#include <cstddef>
#include <functional>

namespace zetadist {

/// Number of items per reduction chunk. Chunk boundaries depend only on the
/// item count, never on the worker count, so fixed-order reductions over
/// chunk partials are reproducible for any thread count.
inline constexpr std::size_t kReductionChunk = 4096;

inline std::size_t chunk_count(std::size_t items, std::size_t chunk = kReductionChunk) {
    return (items + chunk - 1) / chunk;
}

/// Runs body(chunk_index, begin, end) once for every chunk of [0, items).
/// Chunks are handed to up to `threads` workers; body must only write
/// state owned by its chunk. threads <= 1 runs inline.
void for_each_chunk(std::size_t items, std::size_t chunk, unsigned threads,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

}  // namespace zetadist

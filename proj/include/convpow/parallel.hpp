#pragma once

#include <cstddef>
#include <functional>

namespace convpow::parallel {

/// Caps the number of worker threads used by library operations. A value of
/// 0 restores the default (hardware concurrency). Results never depend on it.
void set_thread_limit(unsigned threads);
unsigned thread_limit();

constexpr std::size_t chunk_total(std::size_t count, std::size_t chunk_size) {
  return chunk_size == 0 ? 0 : (count + chunk_size - 1) / chunk_size;
}

/// Runs body(chunk_index, begin, end) for the fixed partition of [0, count)
/// into chunk_size pieces, on up to thread_limit() threads. The partition does
/// not depend on the thread count, so per-chunk partial reductions merged in
/// chunk order are reproducible bit for bit.
void for_each_chunk(std::size_t count, std::size_t chunk_size,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

}  // namespace convpow::parallel

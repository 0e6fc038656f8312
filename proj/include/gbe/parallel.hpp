#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace gbe {

void set_thread_count(int k);
int thread_count();

// Calls fn(chunk_index, begin, end) over fixed-size chunks of [0, count).
// Chunk boundaries do not depend on the thread count, so a caller that
// reduces per-chunk results in index order gets identical output for any k.
void for_each_chunk(std::size_t count, std::size_t chunk,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

inline std::size_t chunk_count(std::size_t count, std::size_t chunk) { return (count + chunk - 1) / chunk; }

}  // namespace gbe

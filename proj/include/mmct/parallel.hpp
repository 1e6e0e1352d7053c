// SPDX-License-Identifier: Apache-2.0
//
// mmct: multi-stream MIMO mapping and link-level toolkit
// Copyright (C) 2026 The mmct authors
// ------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <functional>

namespace mmct {

// Runs fn(chunk_index, begin, end) over [0, count) split into fixed-size
// chunks. Chunk boundaries depend only on count and chunk_size, never on the
// thread count, so per-chunk partial results can be merged in chunk order for
// bit-identical output at any parallelism.
void parallel_chunks(std::size_t count, std::size_t chunk_size, unsigned threads,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

inline std::size_t chunk_count(std::size_t count, std::size_t chunk_size) {
  return (count + chunk_size - 1) / chunk_size;
}

}  // namespace mmct

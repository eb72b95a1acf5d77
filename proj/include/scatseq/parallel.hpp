#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

namespace scatseq {

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Splits [0, total) into contiguous chunks, evaluates `chunk(begin, end)` on a
/// worker pool and folds the per-chunk results in chunk order. The result does
/// not depend on the thread count.
template <class T, class ChunkFn, class Combine>
T parallel_reduce(std::uint64_t total, unsigned threads, T init, ChunkFn&& chunk, Combine&& combine) {
  if (total == 0) return init;
  threads = resolve_threads(threads);
  const std::uint64_t n_chunks = std::min<std::uint64_t>(total, std::uint64_t{threads} * 16);
  std::vector<std::optional<T>> results(n_chunks);
  auto bounds = [&](std::uint64_t c) {
    return std::pair{total * c / n_chunks, total * (c + 1) / n_chunks};
  };
  if (threads == 1 || n_chunks == 1) {
    for (std::uint64_t c = 0; c < n_chunks; ++c) {
      auto [b, e] = bounds(c);
      results[c].emplace(chunk(b, e));
    }
  } else {
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
      for (std::uint64_t c = next++; c < n_chunks; c = next++) {
        auto [b, e] = bounds(c);
        results[c].emplace(chunk(b, e));
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t + 1 < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
  }
  T acc = std::move(init);
  for (auto& r : results) acc = combine(std::move(acc), std::move(*r));
  return acc;
}

/// Finds the smallest index in [0, total) for which `probe(i)` yields a value.
/// Chunks after the earliest hit are abandoned; chunks before it always finish,
/// so the returned hit is the same for every thread count.
template <class Probe>
auto parallel_find_first(std::uint64_t total, unsigned threads, Probe&& probe)
    -> std::optional<std::pair<std::uint64_t, typename decltype(probe(std::uint64_t{}))::value_type>> {
  using V = typename decltype(probe(std::uint64_t{}))::value_type;
  using Hit = std::optional<std::pair<std::uint64_t, V>>;
  if (total == 0) return std::nullopt;
  threads = resolve_threads(threads);
  const std::uint64_t n_chunks = std::min<std::uint64_t>(total, std::uint64_t{threads} * 64);
  std::atomic<std::uint64_t> best_chunk{n_chunks};
  std::vector<Hit> hits(n_chunks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t c = next++; c < n_chunks; c = next++) {
      if (c > best_chunk.load()) continue;
      const std::uint64_t b = total * c / n_chunks, e = total * (c + 1) / n_chunks;
      for (std::uint64_t i = b; i < e; ++i) {
        if ((i & 0xff) == 0 && c > best_chunk.load()) break;
        if (auto v = probe(i)) {
          hits[c].emplace(i, std::move(*v));
          std::uint64_t cur = best_chunk.load();
          while (c < cur && !best_chunk.compare_exchange_weak(cur, c)) {
          }
          break;
        }
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t + 1 < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
  }
  for (auto& h : hits)
    if (h) return h;
  return std::nullopt;
}

}  // namespace scatseq

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace elmkit {

/// Worker count from the ELMKIT_WORKERS environment variable, else the
/// hardware concurrency (at least 1).
std::size_t default_workers();

/// Splits [0, total) into at most `workers` contiguous ranges of at least
/// `min_chunk` items and calls fn(begin, end, slot) for each, slot being
/// the range's position. Returns the number of ranges used. Exceptions from
/// workers are rethrown on the calling thread.
template <typename Fn>
std::size_t for_each_range(std::uint64_t total, std::size_t workers,
                           std::uint64_t min_chunk, Fn &&fn) {
  if (workers == 0)
    workers = default_workers();
  min_chunk = std::max<std::uint64_t>(min_chunk, 1);
  std::uint64_t by_size = (total + min_chunk - 1) / min_chunk;
  std::size_t slots = static_cast<std::size_t>(
      std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, by_size)));
  auto bound = [&](std::size_t slot) { return total / slots * slot +
                                              std::min<std::uint64_t>(slot, total % slots); };
  if (slots == 1) {
    fn(std::uint64_t{0}, total, std::size_t{0});
    return 1;
  }
  std::vector<std::exception_ptr> errors(slots);
  std::vector<std::thread> threads;
  threads.reserve(slots);
  for (std::size_t s = 0; s < slots; ++s)
    threads.emplace_back([&, s] {
      try {
        fn(bound(s), bound(s + 1), s);
      } catch (...) {
        errors[s] = std::current_exception();
      }
    });
  for (auto &t : threads)
    t.join();
  for (auto &e : errors)
    if (e)
      std::rethrow_exception(e);
  return slots;
}

} // namespace elmkit

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace pinch {

/// Worker count: PINCH_THREADS if set and positive, else the hardware
/// concurrency (at least 1).
unsigned worker_count();

/// Calls fn(i) for i in [0, count), spread over worker_count() threads.
/// Callers write results by index, so the outcome never depends on
/// scheduling. The first exception thrown by any task is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

/// SplitMix64 finalizer; used to derive independent per-task streams from
/// (seed, counter).
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Small counter-based generator. Same (seed, stream) gives the same
/// sequence on every platform.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(splitmix64(seed ^ splitmix64(stream + 0x632BE59BD9B4E019ULL))) {}

  std::uint64_t next_u64() { return splitmix64(key_ + counter_++ * 0x9E3779B97F4A7C15ULL); }
  /// Uniform in (0, 1).
  double uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }
  /// Standard normal by Box-Muller.
  double normal();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace pinch

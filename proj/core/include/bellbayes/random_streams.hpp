#pragma once

// Reproducible per-replication random streams.
//
// Replication i of a run with master seed S draws from its own std::mt19937_64
// engine, seeded with
//
//   key  = splitmix64(S)
//   seed = splitmix64(key + (i + 1) * 0x9e3779b97f4a7c15)
//
// where splitmix64(x) is the output of one SplitMix64 step from state x. Uniform variates take
// the top 53 bits of one engine output, so a stream is a pure function of
// (S, i) and is identical across standard libraries and thread schedules.

#include <cstdint>
#include <random>

namespace bellbayes {

inline constexpr const char* kGeneratorName =
    "mt19937_64 per replication; seed = splitmix64(splitmix64(master_seed) + (index+1)*0x9e3779b97f4a7c15); "
    "uniform = top 53 bits / 2^53";

/// Output of one SplitMix64 step taken from state x (increment, then mix).
std::uint64_t splitmix64(std::uint64_t x) noexcept;

std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t stream_index) noexcept;

class ReplicationStream {
 public:
  ReplicationStream(std::uint64_t master_seed, std::uint64_t stream_index)
      : engine_(substream_seed(master_seed, stream_index)) {}

  /// Uniform on [0, 1).
  double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// true with probability p; p = 0 never fires, p = 1 always does.
  bool bernoulli(double p) noexcept { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace bellbayes

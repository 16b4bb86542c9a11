#include "bellbayes/random_streams.hpp"

namespace bellbayes {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t stream_index) noexcept {
  const std::uint64_t key = splitmix64(master_seed);
  return splitmix64(key + (stream_index + 1) * 0x9e3779b97f4a7c15ULL);
}

}  // namespace bellbayes

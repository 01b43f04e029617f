#pragma once

#include <cassert>
#include <cstdint>
#include <limits>
#include <random>
#include <string_view>
#include <vector>

namespace hypercover {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives an independent seed for a named substream. Every randomized
// component draws from its own generator, keyed by (master seed, stream
// name), so results do not depend on scheduling or call order.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view stream) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a over the stream name
  for (unsigned char c : stream) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::uint64_t s = master ^ h;
  std::uint64_t a = splitmix64(s);
  std::uint64_t b = splitmix64(s);
  return a ^ (b << 1) ^ (b >> 1);
}

inline std::mt19937_64 make_rng(std::uint64_t master, std::string_view stream) {
  return std::mt19937_64(derive_seed(master, stream));
}

// Unbiased draw from [0, n). std::uniform_int_distribution is
// implementation-defined, which would break byte-stable seeded output, so we
// roll the usual rejection loop instead.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  assert(n > 0);
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % n;
  for (;;) {
    std::uint64_t v = rng();
    if (v < limit) return v % n;
  }
}

template <typename T>
void shuffle_inplace(std::mt19937_64& rng, std::vector<T>& v) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace hypercover

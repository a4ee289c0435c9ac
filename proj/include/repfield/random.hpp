#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace repfield {

/// All randomized routines draw from this engine. mt19937_64 is fully
/// specified by the standard, so a seed reproduces the same stream on every
/// platform as long as we avoid the implementation-defined distributions.
using Rng = std::mt19937_64;

/// Uniform integer in [0, bound). bound must be nonzero.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    const std::uint64_t draw = rng();
    if (draw < limit) return draw % bound;
  }
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Named sub-seed: mixes a parent seed with a label and up to two indices.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view label, std::uint64_t a = 0,
                                 std::uint64_t b = 0) {
  std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return splitmix64(splitmix64(splitmix64(seed ^ h) ^ a) ^ b);
}

}  // namespace repfield

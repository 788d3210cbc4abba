// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef EBBR_RNG_HPP
#define EBBR_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

namespace ebbr {

/// splitmix64 step; the usual constants.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic substream seed from a base seed and a path of indices
/// (purpose, opponent, agent, ...). Changing any path element decorrelates
/// the stream.
inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = seed;
  std::uint64_t out = splitmix64(s);
  for (std::uint64_t p : path) {
    s = out ^ (p + 0x9e3779b97f4a7c15ULL);
    out = splitmix64(s);
  }
  return out;
}

inline std::mt19937_64 make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  return std::mt19937_64(derive_seed(seed, path));
}

/// Name recorded in experiment output headers.
inline const char* rng_name() { return "splitmix64+mt19937_64"; }

}  // namespace ebbr

#endif  // EBBR_RNG_HPP

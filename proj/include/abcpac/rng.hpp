#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace abcpac {

using Rng = std::mt19937_64;

/// Purposes of derived streams. Values are part of the reproducibility contract.
enum class StreamTag : std::uint64_t {
  kInit = 1,
  kMove = 2,
  kRefresh = 3,
  kResample = 4,
  kObservations = 5,
  kPredictive = 6,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic child stream of `master` identified by an ordered tuple of
/// integers. Distinct tuples give statistically independent streams.
inline Rng derive_stream(std::uint64_t master, std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = splitmix64(master);
  for (auto k : keys) h = splitmix64(h ^ splitmix64(k + 0x632be59bd9b4e019ULL));
  return Rng(h);
}

inline Rng derive_stream(std::uint64_t master, StreamTag tag, std::uint64_t step,
                         std::uint64_t index) {
  return derive_stream(master, {static_cast<std::uint64_t>(tag), step, index});
}

}  // namespace abcpac

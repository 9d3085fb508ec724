#pragma once

#include <cstdint>
#include <random>

namespace tailrho {

using Engine = std::mt19937_64;

//! SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

//! Seed of the stream owned by replicate `rep` of cell `cell`. Streams depend
//! only on their coordinates, never on scheduling.
constexpr std::uint64_t stream_seed(std::uint64_t seed,
                                    std::uint64_t cell,
                                    std::uint64_t rep)
{
  return mix64(mix64(mix64(seed) ^ cell) ^ rep);
}

inline Engine make_stream(std::uint64_t seed, std::uint64_t cell, std::uint64_t rep)
{
  return Engine(stream_seed(seed, cell, rep));
}

//! Uniform double on [0,1) from the top 53 bits of one draw. Unlike
//! std::uniform_real_distribution this is identical on every standard library.
template<class Generator>
double uniform01(Generator& gen)
{
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

} // namespace tailrho

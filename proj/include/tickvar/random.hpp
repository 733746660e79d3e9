#pragma once

// Seed derivation and portable variate generation shared by the samplers.
//
// std::mt19937_64 is fully specified by the standard, but the standard
// distributions are not, so uniform and normal deviates are produced here
// to keep sampled output byte-identical across standard libraries.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace tickvar::rng {

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent seed for sub-stream `stream` of a run seeded with `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

using Engine = std::mt19937_64;

/// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Uniform on (0, 1).
inline double uniform_open(Engine& eng) {
  return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard normal deviate (Marsaglia polar method, one value per call).
inline double standard_normal(Engine& eng) {
  for (;;) {
    const double u = 2.0 * uniform01(eng) - 1.0;
    const double v = 2.0 * uniform01(eng) - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }
}

/// Number of set bits among `bits` fair coin flips: Binomial(bits, 1/2).
std::uint64_t fair_binomial(Engine& eng, std::uint64_t bits);

/// Runs `body(chunk, begin, end)` over fixed-size chunks of [0, count) on a
/// small thread pool. Chunk boundaries depend only on `count` and
/// `chunk_size`, so per-chunk seeding makes results independent of the
/// number of threads.
void for_each_chunk(std::size_t count, std::size_t chunk_size,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

}  // namespace tickvar::rng

#pragma once

#include <cstdint>
#include <numbers>
#include <random>

namespace photondm {

// All randomness flows through std::mt19937_64, whose output sequence is fixed
// by the C++ standard, plus the explicit conversions below. No distribution
// adaptors from <random> are used because their algorithms are
// implementation-defined; with these helpers a seed fully determines every
// sampled byte on any conforming platform.
using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed) { return Engine(seed); }

// One application of the splitmix64 output function (public-domain algorithm
// by Steele, Lea and Flood). Used to spread seed material, never as the
// sampling generator itself.
inline std::uint64_t splitmix64_once(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic seed for stream `index` of a run keyed by `master`. Each sweep
// row owns one stream, so serial and multi-threaded execution produce
// byte-identical results.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64_once(master + 0x9e3779b97f4a7c15ULL * index);
}

// Uniform double in [0, 1): top 53 bits of one engine output scaled by 2^-53.
inline double uniform_unit(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

// Uniform angle in [0, 2*pi).
inline double uniform_angle(Engine& engine) {
  return 2.0 * std::numbers::pi * uniform_unit(engine);
}

// Human-readable description of the scheme above, embedded in reports so a
// reader can reproduce a run without consulting the source.
inline constexpr const char* kGeneratorDescription =
    "mt19937_64; doubles = (next() >> 11) * 2^-53; "
    "stream seeds = splitmix64(master + 0x9e3779b97f4a7c15 * index)";

}  // namespace photondm

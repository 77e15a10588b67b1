#pragma once

#include <cstdint>
#include <random>

namespace egocr {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer (Steele, Lea and Flood 2014).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of stream `index` derived from `base`: the (index+1)-th output of a
/// SplitMix64 generator whose state starts at `base`.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return splitmix64_mix(base + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

}  // namespace egocr

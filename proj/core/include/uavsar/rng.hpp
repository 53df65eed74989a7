#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace uavsar {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; used to derive independent seeds for sub-streams.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed derived from a base seed and a list of stream labels.
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t base,
                                                  std::initializer_list<std::uint64_t> labels) noexcept {
    std::uint64_t s = mix64(base);
    for (auto l : labels) s = mix64(s ^ mix64(l + 0x632be59bd9b4e019ULL));
    return s;
}

[[nodiscard]] inline Rng make_rng(std::uint64_t seed) { return Rng{mix64(seed)}; }

[[nodiscard]] inline double uniform01(Rng& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace uavsar

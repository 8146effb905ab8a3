#pragma once

#include "bellscope/sphere.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace bellscope {

/// Seeded pseudo-random stream.
///
/// A stream is identified by (seed, stream, domain). Kernels derive one
/// stream per fixed-size sample block, so results never depend on how blocks
/// are distributed over threads. The domain separates unrelated uses of the
/// same user seed (hidden-variable samples, random setting quads, ...).
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0, std::uint64_t domain = 0);

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept
    {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform on the sphere: z uniform on [-1, 1], azimuth uniform on [0, 2pi).
    Direction direction();

private:
    std::mt19937_64 engine_;
};

/// Stream domains used across the library.
namespace domain {
inline constexpr std::uint64_t kHiddenVariable = 0;
inline constexpr std::uint64_t kSettingQuads = 1;
inline constexpr std::uint64_t kScreening = 2;
inline constexpr std::uint64_t kSettingPairs = 3;
} // namespace domain

std::vector<Direction> uniform_sphere_sample(RandomStream& stream, std::size_t n);

} // namespace bellscope

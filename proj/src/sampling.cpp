#include "bellscope/sampling.hpp"

#include "bellscope/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace bellscope {

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t domain)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                      static_cast<std::uint32_t>(domain), static_cast<std::uint32_t>(domain >> 32)};
    engine_.seed(seq);
}

Direction RandomStream::direction()
{
    const double z = 2.0 * uniform() - 1.0;
    const double phi = kTwoPi * uniform();
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return Direction::from_cartesian(r * std::cos(phi), r * std::sin(phi), z);
}

std::vector<Direction> uniform_sphere_sample(RandomStream& stream, std::size_t n)
{
    std::vector<Direction> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(stream.direction());
    }
    return out;
}

SamplePoints sample_points(std::uint64_t seed, std::uint64_t domain, std::size_t n, Execution exec)
{
    SamplePoints pts;
    pts.x.resize(n);
    pts.y.resize(n);
    pts.z.resize(n);
    const auto blocks = static_cast<std::int64_t>(detail::block_count(n));
    auto fill_block = [&](std::int64_t b) {
        RandomStream stream(seed, static_cast<std::uint64_t>(b), domain);
        const std::size_t begin = static_cast<std::size_t>(b) * kSampleBlock;
        const std::size_t end = std::min(n, begin + kSampleBlock);
        for (std::size_t i = begin; i < end; ++i) {
            const Direction d = stream.direction();
            pts.x[i] = d.x();
            pts.y[i] = d.y();
            pts.z[i] = d.z();
        }
    };
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t b = 0; b < blocks; ++b) {
            fill_block(b);
        }
    } else {
        for (std::int64_t b = 0; b < blocks; ++b) {
            fill_block(b);
        }
    }
    return pts;
}

} // namespace bellscope

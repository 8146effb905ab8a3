#pragma once

// Monte Carlo kernels over uniform hidden-variable samples.
//
// Samples are generated in fixed blocks of kSampleBlock, block b drawing from
// RandomStream(seed, b, domain). The serial and OpenMP variants visit the same
// blocks and merge the per-block moments in block order, so both return
// bit-identical results for any thread count. The serial variant is the
// reference the tests compare against.

#include "bellscope/sampling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace bellscope {

enum class Execution { serial, parallel };

inline constexpr std::size_t kSampleBlock = 4096;

/// Count, mean and sum of squared deviations; mergeable in a fixed order.
struct RunningMoments {
    std::size_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    static RunningMoments from_sums(std::size_t n, double sum, double sum_sq) noexcept
    {
        if (n == 0) {
            return {};
        }
        const double mean = sum / static_cast<double>(n);
        return {n, mean, std::max(0.0, sum_sq - sum * mean)};
    }

    void merge(const RunningMoments& other) noexcept
    {
        if (other.count == 0) {
            return;
        }
        if (count == 0) {
            *this = other;
            return;
        }
        const double n_a = static_cast<double>(count);
        const double n_b = static_cast<double>(other.count);
        const double n = n_a + n_b;
        const double delta = other.mean - mean;
        mean += delta * n_b / n;
        m2 += other.m2 + delta * delta * n_a * n_b / n;
        count += other.count;
    }

    double variance() const noexcept
    {
        return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
    }

    double std_error() const noexcept
    {
        return count > 0 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
    }
};

template <std::size_t K>
using MomentArray = std::array<RunningMoments, K>;

namespace detail {

inline std::size_t block_count(std::size_t n) noexcept
{
    return (n + kSampleBlock - 1) / kSampleBlock;
}

template <std::size_t K, class SampleFn>
MomentArray<K> block_moments(std::uint64_t seed, std::uint64_t domain, std::size_t block, std::size_t n,
                             const SampleFn& fn)
{
    RandomStream stream(seed, block, domain);
    const std::size_t begin = block * kSampleBlock;
    const std::size_t end = std::min(n, begin + kSampleBlock);
    std::array<double, K> sum{};
    std::array<double, K> sum_sq{};
    for (std::size_t i = begin; i < end; ++i) {
        const std::array<double, K> v = fn(stream.direction());
        for (std::size_t k = 0; k < K; ++k) {
            sum[k] += v[k];
            sum_sq[k] += v[k] * v[k];
        }
    }
    MomentArray<K> out;
    for (std::size_t k = 0; k < K; ++k) {
        out[k] = RunningMoments::from_sums(end - begin, sum[k], sum_sq[k]);
    }
    return out;
}

template <std::size_t K>
MomentArray<K> merge_in_order(const std::vector<MomentArray<K>>& partial)
{
    MomentArray<K> total{};
    for (const auto& block : partial) {
        for (std::size_t k = 0; k < K; ++k) {
            total[k].merge(block[k]);
        }
    }
    return total;
}

} // namespace detail

/// Serial reference: moments of fn(lambda) over n uniform samples.
template <std::size_t K, class SampleFn>
MomentArray<K> sphere_moments_serial(std::uint64_t seed, std::uint64_t domain, std::size_t n, const SampleFn& fn)
{
    const std::size_t blocks = detail::block_count(n);
    std::vector<MomentArray<K>> partial(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
        partial[b] = detail::block_moments<K>(seed, domain, b, n, fn);
    }
    return detail::merge_in_order<K>(partial);
}

/// OpenMP variant of sphere_moments_serial; same blocks, same merge order.
template <std::size_t K, class SampleFn>
MomentArray<K> sphere_moments_parallel(std::uint64_t seed, std::uint64_t domain, std::size_t n, const SampleFn& fn)
{
    const auto blocks = static_cast<std::int64_t>(detail::block_count(n));
    std::vector<MomentArray<K>> partial(static_cast<std::size_t>(blocks));
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < blocks; ++b) {
        partial[static_cast<std::size_t>(b)] =
            detail::block_moments<K>(seed, domain, static_cast<std::size_t>(b), n, fn);
    }
    return detail::merge_in_order<K>(partial);
}

template <std::size_t K, class SampleFn>
MomentArray<K> sphere_moments(Execution exec, std::uint64_t seed, std::uint64_t domain, std::size_t n,
                              const SampleFn& fn)
{
    return exec == Execution::parallel ? sphere_moments_parallel<K>(seed, domain, n, fn)
                                       : sphere_moments_serial<K>(seed, domain, n, fn);
}

/// Structure-of-arrays copy of n hidden-variable samples, generated with the
/// same block streams as sphere_moments.
struct SamplePoints {
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> z;

    std::size_t size() const noexcept { return x.size(); }
};

SamplePoints sample_points(std::uint64_t seed, std::uint64_t domain, std::size_t n, Execution exec);

} // namespace bellscope

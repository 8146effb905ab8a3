#include "bellscope/parallel.hpp"
#include "bellscope/sampling.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <cstring>

using namespace bellscope;

namespace {

bool bit_equal(double a, double b)
{
    return std::memcmp(&a, &b, sizeof a) == 0;
}

} // namespace

TEST(RandomStream, Reproducible)
{
    RandomStream a(7, 3, 1);
    RandomStream b(7, 3, 1);
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(a.uniform(), b.uniform());
    }
}

TEST(RandomStream, StreamsAndDomainsDiffer)
{
    RandomStream base(7, 0, 0);
    RandomStream other_stream(7, 1, 0);
    RandomStream other_domain(7, 0, 1);
    const double u = base.uniform();
    EXPECT_NE(u, other_stream.uniform());
    EXPECT_NE(u, other_domain.uniform());
}

TEST(RandomStream, UniformRange)
{
    RandomStream s(11);
    for (int i = 0; i < 10000; ++i) {
        const double u = s.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(RandomStream, DirectionsAreUnitAndIsotropic)
{
    RandomStream s(5);
    const auto pts = uniform_sphere_sample(s, 200000);
    std::array<double, 3> mean{};
    std::array<double, 3> second{};
    for (const Direction& d : pts) {
        ASSERT_NEAR(d.dot(d), 1.0, 1e-14);
        mean[0] += d.x();
        mean[1] += d.y();
        mean[2] += d.z();
        second[0] += d.x() * d.x();
        second[1] += d.y() * d.y();
        second[2] += d.z() * d.z();
    }
    const double n = static_cast<double>(pts.size());
    // E[v] = 0 and E[v_i^2] = 1/3; standard errors ~ 1.3e-3 and ~6.7e-4.
    for (int k = 0; k < 3; ++k) {
        EXPECT_NEAR(mean[k] / n, 0.0, 6e-3);
        EXPECT_NEAR(second[k] / n, 1.0 / 3.0, 3e-3);
    }
}

TEST(RunningMoments, MergeMatchesDirect)
{
    const std::array<double, 7> v = {1.0, 2.5, -3.0, 4.0, 0.5, 9.0, -1.0};
    double sum = 0.0, sum_sq = 0.0;
    for (double x : v) {
        sum += x;
        sum_sq += x * x;
    }
    const RunningMoments all = RunningMoments::from_sums(v.size(), sum, sum_sq);
    RunningMoments merged = RunningMoments::from_sums(3, 0.5, 1.0 + 6.25 + 9.0);
    merged.merge(RunningMoments::from_sums(4, 12.5, 16.0 + 0.25 + 81.0 + 1.0));
    EXPECT_EQ(merged.count, 7u);
    EXPECT_NEAR(merged.mean, all.mean, 1e-14);
    EXPECT_NEAR(merged.m2, all.m2, 1e-12);
    const double mean = sum / 7.0;
    double ss = 0.0;
    for (double x : v) {
        ss += (x - mean) * (x - mean);
    }
    EXPECT_NEAR(merged.variance(), ss / 6.0, 1e-12);
    EXPECT_NEAR(merged.std_error(), std::sqrt(ss / 6.0 / 7.0), 1e-12);
}

TEST(RunningMoments, EmptyMerge)
{
    RunningMoments a;
    a.merge(RunningMoments{});
    EXPECT_EQ(a.count, 0u);
    EXPECT_EQ(a.std_error(), 0.0);
}

TEST(SphereMoments, SerialAndParallelBitIdentical)
{
    auto fn = [](const Direction& d) { return std::array<double, 2>{d.z() * d.z(), std::abs(d.x())}; };
    for (std::size_t n : {std::size_t{1000}, std::size_t{4096}, std::size_t{50001}}) {
        const auto s = sphere_moments_serial<2>(42, domain::kHiddenVariable, n, fn);
        const auto p = sphere_moments_parallel<2>(42, domain::kHiddenVariable, n, fn);
        for (int k = 0; k < 2; ++k) {
            EXPECT_EQ(s[k].count, n);
            EXPECT_TRUE(bit_equal(s[k].mean, p[k].mean));
            EXPECT_TRUE(bit_equal(s[k].m2, p[k].m2));
        }
    }
}

TEST(SphereMoments, EstimatesKnownIntegrals)
{
    // E[z^2] = 1/3, E[|x|] = 1/2 on the uniform sphere.
    auto fn = [](const Direction& d) { return std::array<double, 2>{d.z() * d.z(), std::abs(d.x())}; };
    const auto m = sphere_moments_serial<2>(9, domain::kHiddenVariable, 200000, fn);
    EXPECT_NEAR(m[0].mean, 1.0 / 3.0, 4.0 * m[0].std_error());
    EXPECT_NEAR(m[1].mean, 0.5, 4.0 * m[1].std_error());
}

TEST(SamplePoints, MatchBlockStreams)
{
    const std::size_t n = 2 * kSampleBlock + 17;
    const SamplePoints s = sample_points(3, domain::kScreening, n, Execution::serial);
    const SamplePoints p = sample_points(3, domain::kScreening, n, Execution::parallel);
    ASSERT_EQ(s.size(), n);
    EXPECT_EQ(s.x, p.x);
    EXPECT_EQ(s.y, p.y);
    EXPECT_EQ(s.z, p.z);
    RandomStream second_block(3, 1, domain::kScreening);
    const Direction d = second_block.direction();
    EXPECT_EQ(s.x[kSampleBlock], d.x());
    EXPECT_EQ(s.z[kSampleBlock], d.z());
}

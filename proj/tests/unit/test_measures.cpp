#include "bellscope/measures.hpp"
#include "bellscope/sampling.hpp"
#include "bellscope/search.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <stdexcept>

using namespace bellscope;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

std::array<double, 2> azimuths(const DirectionPair& p)
{
    return {p.first.azimuth(), p.second.azimuth()};
}

} // namespace

TEST(TvDiscrete, Pseudometric)
{
    const DiscreteModel m = table2_model({0.15});
    for (SettingPair a : kAllPairs) {
        EXPECT_EQ(tv_discrete(m, a, a), 0.0);
        for (SettingPair b : kAllPairs) {
            EXPECT_EQ(tv_discrete(m, a, b), tv_discrete(m, b, a));
            EXPECT_LE(tv_discrete(m, a, b), 2.0);
            for (SettingPair c : kAllPairs) {
                EXPECT_LE(tv_discrete(m, a, c), tv_discrete(m, a, b) + tv_discrete(m, b, c) + 1e-15);
            }
        }
    }
}

TEST(TvCoplanarExact, MatchesQuadratureOracle)
{
    const ContinuousModel singlet = singlet_model();
    RandomStream s(9);
    for (int i = 0; i < 6; ++i) {
        const DirectionQuad q{equatorial(2.0 * oracle::kPi * s.uniform()), equatorial(2.0 * oracle::kPi * s.uniform()),
                              equatorial(2.0 * oracle::kPi * s.uniform()), equatorial(2.0 * oracle::kPi * s.uniform())};
        for (const auto& [a, b] : kSettingPairPairs) {
            const double ref = oracle::coplanar_tv_quadrature(azimuths(q.pair(a)), azimuths(q.pair(b)), 400000);
            EXPECT_NEAR(tv_coplanar_exact(singlet, q, a, b), ref, 2e-5);
        }
    }
}

TEST(TvCoplanarExact, DiagonalClosedForm)
{
    const ContinuousModel singlet = singlet_model();
    for (double t : {0.1, 0.5, oracle::kPi / 4.0, 0.81, 1.2, 1.5, oracle::kPi / 2.0}) {
        EXPECT_NEAR(coplanar_objective(singlet, {t, t}), oracle::singlet_diagonal_tv(t), 1e-12) << t;
    }
}

TEST(TvCoplanarExact, RejectsNonEquatorial)
{
    DirectionQuad q = chsh_optimal_quad();
    q.y = Direction::from_spherical(1.0, 0.3);
    EXPECT_THROW(tv_coplanar_exact(singlet_model(), q, SettingPair::XY, SettingPair::XpYp),
                 std::invalid_argument);
}

TEST(TvMonteCarlo, AgreesWithExact)
{
    const ContinuousModel singlet = singlet_model();
    const DirectionQuad q = common_bisector_quad({oracle::kPi / 4.0, oracle::kPi / 4.0});
    const MonteCarloEstimate e = tv_monte_carlo(singlet, q.pair(SettingPair::XY), q.pair(SettingPair::XpYp), 200000, 3);
    EXPECT_NEAR(e.value, oracle::kSingletReferenceM, 4.0 * e.std_error);
    EXPECT_THROW(tv_monte_carlo(singlet, q.pair(SettingPair::XY), q.pair(SettingPair::XpYp), 9999, 3),
                 std::invalid_argument);
}

TEST(MeasureM, FirstFamily)
{
    for (double p : {0.0, 0.05, 0.2, 1.0 / 3.0}) {
        const MeasureReport r = measure_M(table1_model({p}));
        EXPECT_NEAR(r.M, 2.0 * p, 1e-12);
        EXPECT_NEAR(r.M1, 2.0 * p, 1e-12);
        EXPECT_NEAR(r.M2, 2.0 * p, 1e-12);
        EXPECT_NEAR(r.F, 1.0 - p, 1e-12);
        EXPECT_NEAR(r.E, 2.0 + 6.0 * p, 1e-12);
        EXPECT_NEAR(r.E, 2.0 + 3.0 * r.M, 1e-12);
        EXPECT_EQ(r.method, Method::discrete);
    }
}

TEST(MeasureM, SecondFamily)
{
    for (double p : {0.0, 0.1, 0.25, 1.0 / 3.0}) {
        const MeasureReport r = measure_M(table2_model({p}));
        EXPECT_NEAR(r.M, 2.0 - 4.0 * p, 1e-12);
        EXPECT_NEAR(r.M1, 2.0 - 4.0 * p, 1e-12);
        EXPECT_NEAR(r.M2, 2.0 - 4.0 * p, 1e-12);
        EXPECT_NEAR(r.E, 4.0, 1e-12);
    }
}

TEST(MeasureM, WitnessIsArgmax)
{
    const MeasureReport r = measure_M(table2_model({0.1}));
    EXPECT_NEAR(tv_discrete(table2_model({0.1}), r.witness.first, r.witness.second), r.M, 1e-15);
}

TEST(MeasureM, SingletReferenceQuad)
{
    const ContinuousModel singlet = singlet_model();
    const DirectionQuad q = common_bisector_quad({oracle::kPi / 4.0, oracle::kPi / 4.0});
    const MeasureReport r = measure_M(singlet, q, ExactCoplanar{});
    EXPECT_NEAR(r.M, oracle::kSingletReferenceM, 1e-12);
    EXPECT_NEAR(r.M1, r.M, 1e-12);
    EXPECT_NEAR(r.M2, r.M, 1e-12);
    EXPECT_NEAR(r.F, (4.0 - kSqrt2) / 3.0, 1e-12);
    EXPECT_NEAR(r.bound, 2.0 * kSqrt2, 1e-12);
    EXPECT_EQ(r.method, Method::exact_coplanar);
}

TEST(MeasureM, StructuralInequalities)
{
    const ContinuousModel singlet = singlet_model();
    RandomStream s(44);
    for (int i = 0; i < 50; ++i) {
        const DirectionQuad q{equatorial(6.0 * s.uniform()), equatorial(6.0 * s.uniform()),
                              equatorial(6.0 * s.uniform()), equatorial(6.0 * s.uniform())};
        const MeasureReport r = measure_M(singlet, q, ExactCoplanar{});
        EXPECT_GE(r.M1, 0.0);
        EXPECT_GE(r.M2, 0.0);
        EXPECT_LE(r.M1, r.M + 1e-15);
        EXPECT_LE(r.M2, r.M + 1e-15);
        EXPECT_LE(r.M, std::min(r.M1 + r.M2, 2.0) + 1e-12);
    }
}

TEST(MeasureM, MonteCarloBackend)
{
    const ContinuousModel singlet = singlet_model();
    const DirectionQuad q = common_bisector_quad({oracle::kPi / 4.0, oracle::kPi / 4.0});
    const MeasureReport r = measure_M(singlet, q, McOptions{100000, 8, Execution::parallel});
    EXPECT_EQ(r.method, Method::monte_carlo);
    ASSERT_TRUE(r.seed && r.n);
    EXPECT_EQ(*r.n, 100000u);
    // Max of six noisy estimates: allow the selection upward by 4 sigma.
    EXPECT_NEAR(r.M, oracle::kSingletReferenceM, 4.0 * r.std_error + 0.01);
    EXPECT_THROW(measure_M(singlet, q, McOptions{5000, 1, Execution::serial}), std::invalid_argument);
}

TEST(MeasureM, BellUniformIsIndependent)
{
    const DirectionQuad q = chsh_optimal_quad();
    const MeasureReport r = measure_M(bell_uniform_model(), q, ExactCoplanar{});
    EXPECT_NEAR(r.M, 0.0, 1e-15);
    EXPECT_NEAR(r.F, 1.0, 1e-15);
}

TEST(Chsh, FixedSignAndMaxAbs)
{
    const Expectations e = {0.5, -0.2, 0.3, 0.9};
    EXPECT_NEAR(chsh_E(e), 0.5 - 0.2 + 0.3 - 0.9, 1e-15);
    const ChshMax m = chsh_max_abs(e);
    // Candidates: |1.5 - 1.0| , |1.5 + 0.4|, |1.5 - 0.6|, |1.5 - 1.8| -> 1.9 on XY'.
    EXPECT_NEAR(m.value, 1.9, 1e-15);
    EXPECT_EQ(m.minus_on, SettingPair::XYp);
}

TEST(Chsh, SingletOptimalQuad)
{
    const ContinuousModel singlet = singlet_model();
    const ChshMax m = chsh_max_abs(singlet, chsh_optimal_quad());
    EXPECT_NEAR(m.value, 2.0 * kSqrt2, 1e-12);
    EXPECT_NEAR(std::abs(chsh_E(singlet, chsh_optimal_quad(), ExactCoplanar{})), 2.0 * kSqrt2, 1e-12);
    // The reference quad reaches 2 sqrt 2 only once the minus sign is moved.
    const DirectionQuad ref = common_bisector_quad({oracle::kPi / 4.0, oracle::kPi / 4.0});
    EXPECT_NEAR(chsh_max_abs(singlet, ref).value, 2.0 * kSqrt2, 1e-12);
}

TEST(BoundE, Shape)
{
    EXPECT_EQ(bound_E(0.0), 2.0);
    EXPECT_NEAR(bound_E(0.1), 2.3, 1e-15);
    EXPECT_EQ(bound_E(2.0 / 3.0), 4.0);
    EXPECT_EQ(bound_E(2.0), 4.0);
    double prev = bound_E(0.0);
    for (int k = 1; k <= 200; ++k) {
        const double v = bound_E(k / 100.0);
        EXPECT_GE(v, prev);
        prev = v;
    }
    EXPECT_THROW(bound_E(-1e-9), std::domain_error);
    EXPECT_THROW(bound_E(2.0001), std::domain_error);
}

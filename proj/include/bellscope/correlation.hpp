#pragma once

#include "bellscope/models.hpp"
#include "bellscope/parallel.hpp"

#include <array>
#include <cstddef>
#include <cstdint>

namespace bellscope {

/// p(a, b) for a, b in {-1, +1}. Storage order (+,+), (+,-), (-,+), (-,-).
struct JointDistribution {
    std::array<double, 4> p{};

    static constexpr std::size_t index(int a, int b) noexcept { return (a > 0 ? 0 : 2) + (b > 0 ? 0 : 1); }

    double operator()(int a, int b) const noexcept { return p[index(a, b)]; }
    double& operator()(int a, int b) noexcept { return p[index(a, b)]; }

    double total() const noexcept { return p[0] + p[1] + p[2] + p[3]; }
};

inline constexpr std::array<std::array<int, 2>, 4> kOutcomePairs = {{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};

struct MonteCarloEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
};

struct JointEstimate {
    std::array<MonteCarloEstimate, 4> p{};

    const MonteCarloEstimate& operator()(int a, int b) const noexcept { return p[JointDistribution::index(a, b)]; }
    JointDistribution values() const noexcept;
};

/// Exact p_XY(a, b) for a sector-constant model: density on the sign class
/// times the lune area. Throws std::invalid_argument otherwise.
JointDistribution joint_exact(const ContinuousModel& model, const Direction& x, const Direction& y);

/// Importance-weighted estimate (4 pi / n) sum density * [A = a][B = b] over
/// uniform lambda. Requires n >= 1000.
JointEstimate joint_monte_carlo(const ContinuousModel& model, const Direction& x, const Direction& y,
                                std::size_t n, std::uint64_t seed, Execution exec = Execution::parallel);

/// Weighted sum over the hidden-variable labels for one setting pair.
JointDistribution joint_discrete(const DiscreteModel& model, SettingPair pair);

/// Average product of outcomes, sum a b p(a, b).
double expectation(const JointDistribution& d) noexcept;

struct Marginals {
    double first_plus = 0.0;
    double second_plus = 0.0;
};

Marginals marginals(const JointDistribution& d) noexcept;

} // namespace bellscope

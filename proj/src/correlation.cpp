#include "bellscope/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bellscope {

JointDistribution JointEstimate::values() const noexcept
{
    JointDistribution d;
    for (std::size_t k = 0; k < 4; ++k) {
        d.p[k] = p[k].value;
    }
    return d;
}

JointDistribution joint_exact(const ContinuousModel& model, const Direction& x, const Direction& y)
{
    if (!model.is_sector_constant()) {
        throw std::invalid_argument("joint_exact: model '" + model.name() + "' is not sector-constant");
    }
    const double phi = angle_between(x, y);
    const SectorDensity rho = model.sector_density(x, y);
    JointDistribution d;
    for (const auto& [a, b] : kOutcomePairs) {
        // A = sign x.lambda and B = -sign y.lambda.
        const SignPattern pattern{a, -b};
        d(a, b) = rho.at(pattern) * sector_area(phi, pattern);
    }
    return d;
}

JointEstimate joint_monte_carlo(const ContinuousModel& model, const Direction& x, const Direction& y,
                                std::size_t n, std::uint64_t seed, Execution exec)
{
    if (n < 1000) {
        throw std::invalid_argument("joint_monte_carlo: need at least 1000 samples");
    }
    auto sample = [&](const Direction& lambda) {
        std::array<double, 4> v{};
        const double w = kFourPi * model.density(x, y, lambda);
        const int a = model.outcome_a(x, lambda);
        const int b = model.outcome_b(y, lambda);
        v[JointDistribution::index(a, b)] = w;
        return v;
    };
    const auto moments = sphere_moments<4>(exec, seed, domain::kHiddenVariable, n, sample);
    JointEstimate est;
    for (std::size_t k = 0; k < 4; ++k) {
        est.p[k] = {moments[k].mean, moments[k].std_error(), n, seed};
    }
    return est;
}

JointDistribution joint_discrete(const DiscreteModel& model, SettingPair pair)
{
    const auto first = model.outcomes(first_setting(pair));
    const auto second = model.outcomes(second_setting(pair));
    const auto rho = model.column(pair);
    JointDistribution d;
    for (std::size_t j = 0; j < model.size(); ++j) {
        d(first[j], second[j]) += rho[j];
    }
    return d;
}

double expectation(const JointDistribution& d) noexcept
{
    return d(1, 1) - d(1, -1) - d(-1, 1) + d(-1, -1);
}

Marginals marginals(const JointDistribution& d) noexcept
{
    return {d(1, 1) + d(1, -1), d(1, 1) + d(-1, 1)};
}

} // namespace bellscope

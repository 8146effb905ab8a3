#include "bellscope/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace bellscope {

CheckResult make_check(std::string name, double value, double expected, double tolerance)
{
    const bool pass = std::abs(value - expected) <= tolerance;
    return {std::move(name), pass, value, expected, tolerance};
}

bool CheckReport::pass() const noexcept
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

CheckReport no_signalling_check(const ContinuousModel& model, std::span<const Direction> grid, double tol)
{
    double first_spread = 0.0;
    double second_spread = 0.0;
    for (const Direction& fixed : grid) {
        double lo1 = 1.0, hi1 = 0.0, lo2 = 1.0, hi2 = 0.0;
        for (const Direction& other : grid) {
            const double m1 = marginals(joint_exact(model, fixed, other)).first_plus;
            const double m2 = marginals(joint_exact(model, other, fixed)).second_plus;
            lo1 = std::min(lo1, m1);
            hi1 = std::max(hi1, m1);
            lo2 = std::min(lo2, m2);
            hi2 = std::max(hi2, m2);
        }
        first_spread = std::max(first_spread, hi1 - lo1);
        second_spread = std::max(second_spread, hi2 - lo2);
    }
    CheckReport report;
    report.checks.push_back(make_check("first marginal independent of second setting", first_spread, 0.0, tol));
    report.checks.push_back(make_check("second marginal independent of first setting", second_spread, 0.0, tol));
    return report;
}

namespace {

// Estimate of P(first outcome = +1) and P(second outcome = +1) for (x, y).
std::array<RunningMoments, 2> marginal_moments(const ContinuousModel& model, const Direction& x,
                                               const Direction& y, const McOptions& mc)
{
    auto sample = [&](const Direction& lambda) {
        const double w = kFourPi * model.density(x, y, lambda);
        return std::array<double, 2>{model.outcome_a(x, lambda) > 0 ? w : 0.0,
                                     model.outcome_b(y, lambda) > 0 ? w : 0.0};
    };
    return sphere_moments<2>(mc.execution, mc.seed, domain::kHiddenVariable, mc.samples, sample);
}

double z_score(const RunningMoments& a, const RunningMoments& b) noexcept
{
    const double se = std::hypot(a.std_error(), b.std_error());
    const double diff = std::abs(a.mean - b.mean);
    if (se == 0.0) {
        return diff <= 1e-15 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return diff / se;
}

} // namespace

CheckReport no_signalling_check(const ContinuousModel& model, std::span<const Direction> grid, const McOptions& mc)
{
    const std::size_t g = grid.size();
    // est[i][j] holds marginals for (grid[i], grid[j]).
    std::vector<std::vector<std::array<RunningMoments, 2>>> est(g);
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = 0; j < g; ++j) {
            est[i].push_back(marginal_moments(model, grid[i], grid[j], mc));
        }
    }
    double z_first = 0.0;
    double z_second = 0.0;
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = 0; j < g; ++j) {
            for (std::size_t k = j + 1; k < g; ++k) {
                z_first = std::max(z_first, z_score(est[i][j][0], est[i][k][0]));
                z_second = std::max(z_second, z_score(est[j][i][1], est[k][i][1]));
            }
        }
    }
    CheckReport report;
    report.checks.push_back(
        make_check("first marginal independent of second setting (z-score)", z_first, 0.0, 4.0));
    report.checks.push_back(
        make_check("second marginal independent of first setting (z-score)", z_second, 0.0, 4.0));
    return report;
}

CheckReport no_signalling_check(const DiscreteModel& model, double tol)
{
    auto first = [&](SettingPair p) { return marginals(joint_discrete(model, p)).first_plus; };
    auto second = [&](SettingPair p) { return marginals(joint_discrete(model, p)).second_plus; };
    CheckReport report;
    report.checks.push_back(
        make_check("X marginal: XY vs XY'", first(SettingPair::XY) - first(SettingPair::XYp), 0.0, tol));
    report.checks.push_back(
        make_check("X' marginal: X'Y vs X'Y'", first(SettingPair::XpY) - first(SettingPair::XpYp), 0.0, tol));
    report.checks.push_back(
        make_check("Y marginal: XY vs X'Y", second(SettingPair::XY) - second(SettingPair::XpY), 0.0, tol));
    report.checks.push_back(
        make_check("Y' marginal: XY' vs X'Y'", second(SettingPair::XYp) - second(SettingPair::XpYp), 0.0, tol));
    return report;
}

CheckResult normalization_check(const ContinuousModel& model, const Direction& x, const Direction& y, double tol)
{
    if (!model.is_sector_constant()) {
        throw std::invalid_argument("normalization_check: exact backend needs a sector-constant model");
    }
    const double phi = angle_between(x, y);
    const SectorDensity rho = model.sector_density(x, y);
    double total = 0.0;
    for (SignPattern pattern : kSignPatterns) {
        total += rho.at(pattern) * sector_area(phi, pattern);
    }
    return make_check("density integrates to 1", total, 1.0, tol);
}

CheckResult normalization_check(const ContinuousModel& model, const Direction& x, const Direction& y,
                                const McOptions& mc)
{
    auto sample = [&](const Direction& lambda) { return std::array<double, 1>{kFourPi * model.density(x, y, lambda)}; };
    const auto m = sphere_moments<1>(mc.execution, mc.seed, domain::kHiddenVariable, mc.samples, sample);
    // A constant density has zero sample variance; allow rounding then.
    return make_check("density integrates to 1 (Monte Carlo)", m[0].mean, 1.0,
                      std::max(4.0 * m[0].std_error(), 1e-12));
}

CheckResult normalization_check(const DiscreteModel& model, SettingPair pair, double tol)
{
    double total = 0.0;
    for (double v : model.column(pair)) {
        total += v;
    }
    return make_check("density column " + std::string(to_string(pair)) + " sums to 1", total, 1.0, tol);
}

} // namespace bellscope

#include "bellscope/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bellscope {

const Direction& DirectionQuad::setting(Setting s) const noexcept
{
    switch (s) {
    case Setting::X: return x;
    case Setting::Xp: return x_prime;
    case Setting::Y: return y;
    case Setting::Yp: return y_prime;
    }
    return x;
}

bool DirectionQuad::is_equatorial(double tol) const noexcept
{
    return x.is_equatorial(tol) && x_prime.is_equatorial(tol) && y.is_equatorial(tol) &&
           y_prime.is_equatorial(tol);
}

std::string_view to_string(Method m) noexcept
{
    switch (m) {
    case Method::exact_coplanar: return "exact-coplanar";
    case Method::monte_carlo: return "monte-carlo";
    case Method::discrete: return "discrete";
    }
    return "?";
}

double tv_discrete(const DiscreteModel& model, SettingPair pair1, SettingPair pair2)
{
    const auto a = model.column(pair1);
    const auto b = model.column(pair2);
    double total = 0.0;
    for (std::size_t j = 0; j < model.size(); ++j) {
        total += std::abs(a[j] - b[j]);
    }
    return total;
}

double tv_coplanar_exact(const ContinuousModel& model, const DirectionQuad& quad, SettingPair pair1,
                         SettingPair pair2)
{
    if (!quad.is_equatorial()) {
        throw std::invalid_argument("tv_coplanar_exact: all settings must be equatorial");
    }
    if (!model.is_sector_constant()) {
        throw std::invalid_argument("tv_coplanar_exact: model '" + model.name() + "' is not sector-constant");
    }
    std::vector<double> cuts;
    cuts.reserve(8);
    for (Setting s : kAllSettings) {
        const double az = quad.setting(s).azimuth();
        cuts.push_back(az + 0.5 * kPi);
        cuts.push_back(az - 0.5 * kPi);
    }
    const DirectionPair p1 = quad.pair(pair1);
    const DirectionPair p2 = quad.pair(pair2);
    double total = 0.0;
    for (const AzimuthInterval& arc : azimuth_partition(cuts)) {
        const Direction lambda = equatorial(arc.midpoint());
        const double rho1 = model.density(p1.first, p1.second, lambda);
        const double rho2 = model.density(p2.first, p2.second, lambda);
        total += 2.0 * arc.length() * std::abs(rho1 - rho2);
    }
    return total;
}

MonteCarloEstimate tv_monte_carlo(const ContinuousModel& model, const DirectionPair& pair1,
                                  const DirectionPair& pair2, std::size_t n, std::uint64_t seed, Execution exec)
{
    if (n < 10000) {
        throw std::invalid_argument("tv_monte_carlo: need at least 10^4 samples");
    }
    auto sample = [&](const Direction& lambda) {
        const double rho1 = model.density(pair1.first, pair1.second, lambda);
        const double rho2 = model.density(pair2.first, pair2.second, lambda);
        return std::array<double, 1>{kFourPi * std::abs(rho1 - rho2)};
    };
    const auto m = sphere_moments<1>(exec, seed, domain::kHiddenVariable, n, sample);
    return {m[0].mean, m[0].std_error(), n, seed};
}

namespace {


bool differs_in_first_only(SettingPair a, SettingPair b) noexcept
{
    return second_setting(a) == second_setting(b) && first_setting(a) != first_setting(b);
}

bool differs_in_second_only(SettingPair a, SettingPair b) noexcept
{
    return first_setting(a) == first_setting(b) && second_setting(a) != second_setting(b);
}

MeasureReport assemble(const std::array<double, 6>& distances, const std::array<double, 6>& errors,
                       const Expectations& e, Method method)
{
    MeasureReport r;
    r.method = method;
    r.M = -1.0;
    for (std::size_t k = 0; k < kSettingPairPairs.size(); ++k) {
        const auto [a, b] = kSettingPairPairs[k];
        if (distances[k] > r.M) {
            r.M = distances[k];
            r.witness = {a, b};
            r.std_error = errors[k];
        }
        if (differs_in_first_only(a, b)) {
            r.M1 = std::max(r.M1, distances[k]);
        }
        if (differs_in_second_only(a, b)) {
            r.M2 = std::max(r.M2, distances[k]);
        }
    }
    r.F = 1.0 - r.M / 2.0;
    r.E = chsh_E(e);
    r.bound = bound_E(std::clamp(r.M, 0.0, 2.0));
    return r;
}

} // namespace

MeasureReport measure_M(const DiscreteModel& model)
{
    std::array<double, 6> d{};
    for (std::size_t k = 0; k < kSettingPairPairs.size(); ++k) {
        d[k] = tv_discrete(model, kSettingPairPairs[k].first, kSettingPairPairs[k].second);
    }
    return assemble(d, {}, expectations(model), Method::discrete);
}

MeasureReport measure_M(const ContinuousModel& model, const DirectionQuad& quad, ExactCoplanar tag)
{
    std::array<double, 6> d{};
    for (std::size_t k = 0; k < kSettingPairPairs.size(); ++k) {
        d[k] = tv_coplanar_exact(model, quad, kSettingPairPairs[k].first, kSettingPairPairs[k].second);
    }
    return assemble(d, {}, expectations(model, quad, tag), Method::exact_coplanar);
}

MeasureReport measure_M(const ContinuousModel& model, const DirectionQuad& quad, const McOptions& mc)
{
    if (mc.samples < 10000) {
        throw std::invalid_argument("measure_M: Monte Carlo backend needs at least 10^4 samples");
    }
    // One pass over shared samples; each distance equals tv_monte_carlo with the same seed.
    auto sample = [&](const Direction& lambda) {
        std::array<double, 4> rho{};
        for (SettingPair p : kAllPairs) {
            const DirectionPair dp = quad.pair(p);
            rho[index_of(p)] = model.density(dp.first, dp.second, lambda);
        }
        std::array<double, 6> v{};
        for (std::size_t k = 0; k < kSettingPairPairs.size(); ++k) {
            v[k] = kFourPi * std::abs(rho[index_of(kSettingPairPairs[k].first)] - rho[index_of(kSettingPairPairs[k].second)]);
        }
        return v;
    };
    const auto m = sphere_moments<6>(mc.execution, mc.seed, domain::kHiddenVariable, mc.samples, sample);
    std::array<double, 6> d{};
    std::array<double, 6> se{};
    for (std::size_t k = 0; k < 6; ++k) {
        d[k] = m[k].mean;
        se[k] = m[k].std_error();
    }
    MeasureReport r = assemble(d, se, expectations(model, quad, mc), Method::monte_carlo);
    r.seed = mc.seed;
    r.n = mc.samples;
    return r;
}

Expectations expectations(const DiscreteModel& model)
{
    Expectations e{};
    for (SettingPair p : kAllPairs) {
        e[index_of(p)] = expectation(joint_discrete(model, p));
    }
    return e;
}

Expectations expectations(const ContinuousModel& model, const DirectionQuad& quad, ExactCoplanar)
{
    Expectations e{};
    for (SettingPair p : kAllPairs) {
        const DirectionPair dp = quad.pair(p);
        e[index_of(p)] = expectation(joint_exact(model, dp.first, dp.second));
    }
    return e;
}

Expectations expectations(const ContinuousModel& model, const DirectionQuad& quad, const McOptions& mc)
{
    Expectations e{};
    for (SettingPair p : kAllPairs) {
        const DirectionPair dp = quad.pair(p);
        e[index_of(p)] = expectation(joint_monte_carlo(model, dp.first, dp.second, mc.samples, mc.seed,
                                                       mc.execution).values());
    }
    return e;
}

double chsh_E(const Expectations& e) noexcept
{
    return e[0] + e[1] + e[2] - e[3];
}

double chsh_E(const DiscreteModel& model)
{
    return chsh_E(expectations(model));
}

double chsh_E(const ContinuousModel& model, const DirectionQuad& quad, ExactCoplanar tag)
{
    return chsh_E(expectations(model, quad, tag));
}

double chsh_E(const ContinuousModel& model, const DirectionQuad& quad, const McOptions& mc)
{
    return chsh_E(expectations(model, quad, mc));
}

ChshMax chsh_max_abs(const Expectations& e) noexcept
{
    const double sum = e[0] + e[1] + e[2] + e[3];
    ChshMax best{-1.0, SettingPair::XY};
    for (SettingPair p : kAllPairs) {
        const double value = std::abs(sum - 2.0 * e[index_of(p)]);
        if (value > best.value) {
            best = {value, p};
        }
    }
    return best;
}

ChshMax chsh_max_abs(const DiscreteModel& model)
{
    return chsh_max_abs(expectations(model));
}

ChshMax chsh_max_abs(const ContinuousModel& model, const DirectionQuad& quad)
{
    return chsh_max_abs(expectations(model, quad, ExactCoplanar{}));
}

double bound_E(double M)
{
    if (!(M >= 0.0 && M <= 2.0)) {
        throw std::domain_error("bound_E: M must lie in [0, 2]");
    }
    return std::min(2.0 + 3.0 * M, 4.0);
}

} // namespace bellscope

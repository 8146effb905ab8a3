#include "bellscope/search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace bellscope {

namespace {

// Later candidates must beat the incumbent by more than this to replace it.
constexpr double kTieTol = 1e-13;

double grid_angle(std::size_t i, std::size_t grid_n) noexcept
{
    return kPi * static_cast<double>(i) / static_cast<double>(grid_n - 1);
}

bool in_range(double phi) noexcept
{
    return phi >= 0.0 && phi <= kPi;
}

} // namespace

DirectionQuad common_bisector_quad(const CoplanarConfig& config)
{
    if (!in_range(config.phi_xy) || !in_range(config.phi_prime)) {
        throw std::invalid_argument("common_bisector_quad: angles must lie in [0, pi]");
    }
    const double centre = 0.5 * kPi + 0.5 * config.phi_xy;
    return {
        equatorial(0.0),
        equatorial(centre - 0.5 * config.phi_prime),
        equatorial(config.phi_xy),
        equatorial(centre + 0.5 * config.phi_prime),
    };
}

double coplanar_objective(const ContinuousModel& model, const CoplanarConfig& config)
{
    return tv_coplanar_exact(model, common_bisector_quad(config), SettingPair::XY, SettingPair::XpYp);
}

std::vector<double> coplanar_grid_serial(const ContinuousModel& model, std::size_t grid_n)
{
    std::vector<double> values(grid_n * grid_n);
    for (std::size_t i = 0; i < grid_n; ++i) {
        for (std::size_t j = 0; j < grid_n; ++j) {
            values[i * grid_n + j] = coplanar_objective(model, {grid_angle(i, grid_n), grid_angle(j, grid_n)});
        }
    }
    return values;
}

std::vector<double> coplanar_grid_parallel(const ContinuousModel& model, std::size_t grid_n)
{
    std::vector<double> values(grid_n * grid_n);
    const auto rows = static_cast<std::int64_t>(grid_n);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t r = 0; r < rows; ++r) {
        const auto i = static_cast<std::size_t>(r);
        for (std::size_t j = 0; j < grid_n; ++j) {
            values[i * grid_n + j] = coplanar_objective(model, {grid_angle(i, grid_n), grid_angle(j, grid_n)});
        }
    }
    return values;
}

CoplanarSearchResult maximize_M_coplanar(const ContinuousModel& model, std::size_t grid_n, double refine_tol,
                                         Execution exec)
{
    if (grid_n < 32) {
        throw std::invalid_argument("maximize_M_coplanar: grid_n must be at least 32");
    }
    if (!(refine_tol > 0.0)) {
        throw std::invalid_argument("maximize_M_coplanar: refine_tol must be positive");
    }
    const std::vector<double> values =
        exec == Execution::parallel ? coplanar_grid_parallel(model, grid_n) : coplanar_grid_serial(model, grid_n);

    CoplanarSearchResult result;
    result.evaluations = values.size();
    std::size_t best = 0;
    for (std::size_t k = 1; k < values.size(); ++k) {
        if (values[k] > values[best] + kTieTol) {
            best = k;
        }
    }
    result.grid_value = values[best];
    result.grid_config = {grid_angle(best / grid_n, grid_n), grid_angle(best % grid_n, grid_n)};

    // Compass search. Diagonal moves matter: the maximum sits on the
    // phi_xy == phi_prime kink, where axis moves alone stall.
    constexpr std::array<std::array<double, 2>, 8> kMoves = {{
        {1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1},
    }};
    CoplanarConfig at = result.grid_config;
    double value = result.grid_value;
    double step = kPi / static_cast<double>(grid_n - 1);
    while (step >= refine_tol) {
        bool moved = false;
        for (const auto& mv : kMoves) {
            const CoplanarConfig cand{std::clamp(at.phi_xy + step * mv[0], 0.0, kPi),
                                      std::clamp(at.phi_prime + step * mv[1], 0.0, kPi)};
            if (cand.phi_xy == at.phi_xy && cand.phi_prime == at.phi_prime) {
                continue;
            }
            const double v = coplanar_objective(model, cand);
            ++result.evaluations;
            if (v > value + 1e-15) {
                at = cand;
                value = v;
                moved = true;
                break;
            }
        }
        if (!moved) {
            step *= 0.5;
        }
    }
    result.M_star = value;
    result.config = at;
    return result;
}

DirectionQuad random_search_quad(std::uint64_t seed, std::size_t trial)
{
    RandomStream stream(seed, trial, domain::kSettingQuads);
    const Direction x = stream.direction();
    const Direction xp = stream.direction();
    const Direction y = stream.direction();
    const Direction yp = stream.direction();
    return {x, xp, y, yp};
}

namespace {

TrialScreen finish_screen(const std::array<RunningMoments, 6>& m)
{
    TrialScreen best{-1.0, 0.0, {}};
    for (std::size_t k = 0; k < kSettingPairPairs.size(); ++k) {
        if (m[k].mean > best.value) {
            best = {m[k].mean, m[k].std_error(), {kSettingPairPairs[k].first, kSettingPairPairs[k].second}};
        }
    }
    return best;
}

TrialScreen screen_sector_constant(const ContinuousModel& model, const DirectionQuad& quad,
                                   const SamplePoints& samples)
{
    std::array<double, 4> dx{};
    std::array<double, 4> dy{};
    std::array<double, 4> dz{};
    for (Setting s : kAllSettings) {
        const Direction& d = quad.setting(s);
        dx[index_of(s)] = d.x();
        dy[index_of(s)] = d.y();
        dz[index_of(s)] = d.z();
    }
    // Bit k of a cell index is set iff setting k has sign +1 at lambda.
    std::array<std::size_t, 16> counts{};
    const std::size_t n = samples.size();
    const double* px = samples.x.data();
    const double* py = samples.y.data();
    const double* pz = samples.z.data();
    for (std::size_t i = 0; i < n; ++i) {
        unsigned cell = 0;
        for (unsigned k = 0; k < 4; ++k) {
            const double t = dx[k] * px[i] + dy[k] * py[i] + dz[k] * pz[i];
            cell |= static_cast<unsigned>(t >= 0.0) << k;
        }
        ++counts[cell];
    }

    std::array<SectorDensity, 4> sectors{};
    for (SettingPair p : kAllPairs) {
        const DirectionPair dp = quad.pair(p);
        sectors[index_of(p)] = model.sector_density(dp.first, dp.second);
    }
    auto rho = [&](SettingPair p, unsigned cell) {
        const auto sign = [cell](Setting s) { return ((cell >> index_of(s)) & 1u) ? 1 : -1; };
        return sectors[index_of(p)].at({sign(first_setting(p)), sign(second_setting(p))});
    };

    std::array<RunningMoments, 6> m{};
    for (std::size_t k = 0; k < kSettingPairPairs.size(); ++k) {
        const auto [a, b] = kSettingPairPairs[k];
        double sum = 0.0;
        double sum_sq = 0.0;
        for (unsigned cell = 0; cell < 16; ++cell) {
            const double v = kFourPi * std::abs(rho(a, cell) - rho(b, cell));
            const auto c = static_cast<double>(counts[cell]);
            sum += c * v;
            sum_sq += c * v * v;
        }
        m[k] = RunningMoments::from_sums(n, sum, sum_sq);
    }
    return finish_screen(m);
}

TrialScreen screen_generic(const ContinuousModel& model, const DirectionQuad& quad, const SamplePoints& samples)
{
    std::array<DirectionPair, 4> pairs{};
    for (SettingPair p : kAllPairs) {
        pairs[index_of(p)] = quad.pair(p);
    }
    std::array<double, 6> sum{};
    std::array<double, 6> sum_sq{};
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const Direction lambda = Direction::from_cartesian(samples.x[i], samples.y[i], samples.z[i]);
        std::array<double, 4> rho{};
        for (std::size_t p = 0; p < 4; ++p) {
            rho[p] = model.density(pairs[p].first, pairs[p].second, lambda);
        }
        for (std::size_t k = 0; k < kSettingPairPairs.size(); ++k) {
            const double v = kFourPi * std::abs(rho[index_of(kSettingPairPairs[k].first)] -
                                                rho[index_of(kSettingPairPairs[k].second)]);
            sum[k] += v;
            sum_sq[k] += v * v;
        }
    }
    std::array<RunningMoments, 6> m{};
    for (std::size_t k = 0; k < 6; ++k) {
        m[k] = RunningMoments::from_sums(samples.size(), sum[k], sum_sq[k]);
    }
    return finish_screen(m);
}

} // namespace

TrialScreen screen_quad(const ContinuousModel& model, const DirectionQuad& quad, const SamplePoints& samples)
{
    if (samples.size() == 0) {
        throw std::invalid_argument("screen_quad: no samples");
    }
    return model.is_sector_constant() ? screen_sector_constant(model, quad, samples)
                                      : screen_generic(model, quad, samples);
}

GeneralSearchResult random_search_M_general(const ContinuousModel& model, std::size_t trials, std::size_t n_mc,
                                            std::uint64_t seed, Execution exec)
{
    if (trials == 0) {
        throw std::invalid_argument("random_search_M_general: need at least one trial");
    }
    if (n_mc < 100000) {
        throw std::invalid_argument("random_search_M_general: n_mc must be at least 10^5");
    }
    const SamplePoints samples = sample_points(seed, domain::kScreening, n_mc, exec);
    std::vector<TrialScreen> screens(trials);
    const auto count = static_cast<std::int64_t>(trials);
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (std::int64_t t = 0; t < count; ++t) {
            const auto trial = static_cast<std::size_t>(t);
            screens[trial] = screen_quad(model, random_search_quad(seed, trial), samples);
        }
    } else {
        for (std::size_t t = 0; t < trials; ++t) {
            screens[t] = screen_quad(model, random_search_quad(seed, t), samples);
        }
    }

    std::size_t best = 0;
    for (std::size_t t = 1; t < trials; ++t) {
        if (screens[t].value > screens[best].value) {
            best = t;
        }
    }

    GeneralSearchResult result;
    result.best_trial = best;
    result.trials = trials;
    result.evaluations = trials * kSettingPairPairs.size() + 1;
    result.screen_value = screens[best].value;
    result.screen_std_error = screens[best].std_error;
    result.witness = screens[best].witness;
    result.quad = random_search_quad(seed, best);
    result.M_star = tv_monte_carlo(model, result.quad.pair(result.witness.first),
                                   result.quad.pair(result.witness.second), n_mc, seed, exec);
    return result;
}

DirectionQuad chsh_optimal_quad()
{
    return {equatorial(0.0), equatorial(1.5 * kPi), equatorial(0.75 * kPi), equatorial(1.25 * kPi)};
}

} // namespace bellscope

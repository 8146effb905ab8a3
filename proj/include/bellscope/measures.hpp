#pragma once

#include "bellscope/correlation.hpp"
#include "bellscope/models.hpp"
#include "bellscope/parallel.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

namespace bellscope {

struct DirectionPair {
    Direction first;
    Direction second;
};

/// Directions for X, X', Y, Y'.
struct DirectionQuad {
    Direction x;
    Direction x_prime;
    Direction y;
    Direction y_prime;

    const Direction& setting(Setting s) const noexcept;
    DirectionPair pair(SettingPair p) const noexcept { return {setting(first_setting(p)), setting(second_setting(p))}; }
    bool is_equatorial(double tol = 1e-12) const noexcept;
};

/// Tag selecting the exact azimuth-partition backend (equatorial settings).
struct ExactCoplanar {};

struct McOptions {
    std::size_t samples = 100000;
    std::uint64_t seed = 1;
    Execution execution = Execution::parallel;
};

enum class Method { exact_coplanar, monte_carlo, discrete };

std::string_view to_string(Method m) noexcept;

/// The two setting pairs whose densities realise a maximum.
struct PairWitness {
    SettingPair first = SettingPair::XY;
    SettingPair second = SettingPair::XY;
};

struct MeasureReport {
    double M = 0.0;
    double M1 = 0.0;
    double M2 = 0.0;
    double F = 1.0;
    double E = 0.0;
    double bound = 2.0;
    PairWitness witness;
    Method method = Method::discrete;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> n;
    /// Standard error of the witness distance (Monte Carlo only).
    double std_error = 0.0;
};

/// The six unordered pairs of setting pairs, in lexicographic order.
inline constexpr std::array<std::pair<SettingPair, SettingPair>, 6> kSettingPairPairs = {{
    {SettingPair::XY, SettingPair::XYp},
    {SettingPair::XY, SettingPair::XpY},
    {SettingPair::XY, SettingPair::XpYp},
    {SettingPair::XYp, SettingPair::XpY},
    {SettingPair::XYp, SettingPair::XpYp},
    {SettingPair::XpY, SettingPair::XpYp},
}};

/// sum_j |rho_pair1(lambda_j) - rho_pair2(lambda_j)|.
double tv_discrete(const DiscreteModel& model, SettingPair pair1, SettingPair pair2);

/// Integral of |rho_pair1 - rho_pair2| over the sphere for equatorial
/// settings, exact up to rounding. The azimuth circle is cut at every
/// direction's +-pi/2 meridians; each arc [lo, hi) spans a lune of area
/// 2 (hi - lo) on which both densities are constant.
/// Throws std::invalid_argument for non-equatorial or non-sector-constant input.
double tv_coplanar_exact(const ContinuousModel& model, const DirectionQuad& quad, SettingPair pair1,
                         SettingPair pair2);

/// (4 pi / n) sum |rho_1(lambda_i) - rho_2(lambda_i)| over uniform lambda.
/// Requires n >= 10^4.
MonteCarloEstimate tv_monte_carlo(const ContinuousModel& model, const DirectionPair& pair1,
                                  const DirectionPair& pair2, std::size_t n, std::uint64_t seed,
                                  Execution exec = Execution::parallel);

/// Largest distance over all six unordered pairs of setting pairs (M), over
/// pairs differing only in the first setting (M1), and only in the second (M2).
MeasureReport measure_M(const DiscreteModel& model);
MeasureReport measure_M(const ContinuousModel& model, const DirectionQuad& quad, ExactCoplanar);
MeasureReport measure_M(const ContinuousModel& model, const DirectionQuad& quad, const McOptions& mc);

/// <XY>, <XY'>, <X'Y>, <X'Y'>.
using Expectations = std::array<double, 4>;

Expectations expectations(const DiscreteModel& model);
Expectations expectations(const ContinuousModel& model, const DirectionQuad& quad, ExactCoplanar);
Expectations expectations(const ContinuousModel& model, const DirectionQuad& quad, const McOptions& mc);

/// <XY> + <XY'> + <X'Y> - <X'Y'>.
double chsh_E(const Expectations& e) noexcept;
double chsh_E(const DiscreteModel& model);
double chsh_E(const ContinuousModel& model, const DirectionQuad& quad, ExactCoplanar);
double chsh_E(const ContinuousModel& model, const DirectionQuad& quad, const McOptions& mc);

struct ChshMax {
    double value = 0.0;
    SettingPair minus_on = SettingPair::XpYp;
};

/// Largest |E| over the four placements of the single minus sign; ties go to
/// the earliest pair in XY, XY', X'Y, X'Y' order.
ChshMax chsh_max_abs(const Expectations& e) noexcept;
ChshMax chsh_max_abs(const DiscreteModel& model);
ChshMax chsh_max_abs(const ContinuousModel& model, const DirectionQuad& quad);

/// min(2 + 3M, 4). Throws std::domain_error unless 0 <= M <= 2.
double bound_E(double M);

} // namespace bellscope

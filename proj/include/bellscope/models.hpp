#pragma once

#include "bellscope/sphere.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bellscope {

/// The four settings of a CHSH scenario: X, X' for the first observer and
/// Y, Y' for the second.
enum class Setting { X, Xp, Y, Yp };

/// Joint setting pairs, in the order XY, XY', X'Y, X'Y'.
enum class SettingPair { XY, XYp, XpY, XpYp };

inline constexpr std::array<Setting, 4> kAllSettings = {Setting::X, Setting::Xp, Setting::Y, Setting::Yp};
inline constexpr std::array<SettingPair, 4> kAllPairs = {SettingPair::XY, SettingPair::XYp, SettingPair::XpY,
                                                         SettingPair::XpYp};

constexpr std::size_t index_of(Setting s) noexcept { return static_cast<std::size_t>(s); }
constexpr std::size_t index_of(SettingPair p) noexcept { return static_cast<std::size_t>(p); }

constexpr Setting first_setting(SettingPair p) noexcept
{
    return (p == SettingPair::XY || p == SettingPair::XYp) ? Setting::X : Setting::Xp;
}

constexpr Setting second_setting(SettingPair p) noexcept
{
    return (p == SettingPair::XY || p == SettingPair::XpY) ? Setting::Y : Setting::Yp;
}

std::string_view to_string(Setting s) noexcept;
std::string_view to_string(SettingPair p) noexcept;

/// Accepts "X", "X'" / "Xp", ... Throws std::invalid_argument otherwise.
Setting parse_setting(std::string_view label);
/// Accepts "XY", "XY'", "X'Y", "X'Y'" (or with p for the prime).
SettingPair parse_setting_pair(std::string_view label);

/// Values a density takes on the two sign classes of a setting pair (x, y):
/// sign x.lambda == sign y.lambda, and the complement.
struct SectorDensity {
    double equal_signs = 0.0;
    double unequal_signs = 0.0;

    double at(SignPattern pattern) const noexcept { return pattern.equal() ? equal_signs : unequal_signs; }
};

/// Deterministic model with a unit-vector hidden variable.
///
/// density(x, y, lambda) is a probability density per steradian for each
/// setting pair. Outcomes are deterministic and local: outcome_a sees only
/// (x, lambda) and outcome_b only (y, lambda).
///
/// Sector-constant models additionally expose the two values of their density
/// on the sign classes of (x, y) and use the outcomes A = sign x.lambda,
/// B = -sign y.lambda. The exact engines require this form.
class ContinuousModel {
public:
    using DensityFn = std::function<double(const Direction& x, const Direction& y, const Direction& lambda)>;
    using OutcomeFn = std::function<int(const Direction& setting, const Direction& lambda)>;
    using SectorFn = std::function<SectorDensity(const Direction& x, const Direction& y)>;

    /// A model given `sectors` must use A = sign x.lambda, B = -sign y.lambda and
    /// a density that agrees with `sectors` on each sign class.
    ContinuousModel(std::string name, DensityFn density, OutcomeFn outcome_a, OutcomeFn outcome_b,
                    std::optional<SectorFn> sectors = std::nullopt);

    /// Builds density and outcomes from the sector values alone.
    static ContinuousModel sector_constant(std::string name, SectorFn sectors);

    const std::string& name() const noexcept { return name_; }

    double density(const Direction& x, const Direction& y, const Direction& lambda) const
    {
        return density_(x, y, lambda);
    }
    int outcome_a(const Direction& x, const Direction& lambda) const { return outcome_a_(x, lambda); }
    int outcome_b(const Direction& y, const Direction& lambda) const { return outcome_b_(y, lambda); }

    bool is_sector_constant() const noexcept { return sectors_.has_value(); }

    /// Throws std::logic_error for models without the sector-constant form.
    SectorDensity sector_density(const Direction& x, const Direction& y) const;

private:
    std::string name_;
    DensityFn density_;
    OutcomeFn outcome_a_;
    OutcomeFn outcome_b_;
    std::optional<SectorFn> sectors_;
};

/// Density values of the singlet model for a pair with cos(angle) = c and
/// angle phi: (1 + c) / (8 (pi - phi)) on equal signs, (1 - c) / (8 phi) on
/// unequal signs, zero where a denominator vanishes.
SectorDensity singlet_sector_density(double cos_xy, double phi_xy) noexcept;

/// Deterministic, no-signalling model of the singlet correlations with a
/// setting-dependent density on the two sign classes.
ContinuousModel singlet_model();

/// Same outcomes with the uniform density 1/(4 pi) for every setting pair.
ContinuousModel bell_uniform_model();

/// Hidden-variable model over a finite label set with the four CHSH settings.
class DiscreteModel {
public:
    using OutcomeTable = std::array<std::vector<int>, 4>;      // indexed by Setting
    using DensityTable = std::array<std::vector<double>, 4>;   // indexed by SettingPair

    /// Validates shape, outcomes in {-1, +1}, and finite nonnegative densities.
    /// Column normalization is left to normalization_check so that malformed
    /// fixtures can still be represented and diagnosed.
    DiscreteModel(std::vector<std::string> labels, OutcomeTable outcomes, DensityTable densities);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    int outcome(Setting s, std::size_t j) const { return outcomes_[index_of(s)].at(j); }
    double density(SettingPair p, std::size_t j) const { return densities_[index_of(p)].at(j); }

    std::span<const int> outcomes(Setting s) const noexcept { return outcomes_[index_of(s)]; }
    std::span<const double> column(SettingPair p) const noexcept { return densities_[index_of(p)]; }

    friend bool operator==(const DiscreteModel&, const DiscreteModel&) = default;

private:
    std::vector<std::string> labels_;
    OutcomeTable outcomes_;
    DensityTable densities_;
};

/// Parameters of the five-row table families.
struct TableParams {
    double p = 0.0;
    std::array<int, 5> signs = {1, 1, 1, 1, 1}; // a, b, c, d, e
};

/// Five-row family with three perfectly correlated pairs and
/// <X'Y'> = 1 - 6p, so E = 2 + 6p at M = 2p. Throws std::invalid_argument
/// unless 0 <= p <= 1/3 and every sign is +-1.
DiscreteModel table1_model(const TableParams& params);

/// Same outcomes as table1_model with densities reaching E = 4 at
/// M = 2 - 4p. Row lambda5 carries zero weight and is kept so that both
/// families coincide at p = 1/3. Same preconditions.
DiscreteModel table2_model(const TableParams& params);

} // namespace bellscope

#include "bellscope/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace bellscope {

std::string_view to_string(Setting s) noexcept
{
    switch (s) {
    case Setting::X: return "X";
    case Setting::Xp: return "X'";
    case Setting::Y: return "Y";
    case Setting::Yp: return "Y'";
    }
    return "?";
}

std::string_view to_string(SettingPair p) noexcept
{
    switch (p) {
    case SettingPair::XY: return "XY";
    case SettingPair::XYp: return "XY'";
    case SettingPair::XpY: return "X'Y";
    case SettingPair::XpYp: return "X'Y'";
    }
    return "?";
}

Setting parse_setting(std::string_view label)
{
    if (label == "X") return Setting::X;
    if (label == "X'" || label == "Xp") return Setting::Xp;
    if (label == "Y") return Setting::Y;
    if (label == "Y'" || label == "Yp") return Setting::Yp;
    throw std::invalid_argument("unknown setting label: " + std::string(label));
}

SettingPair parse_setting_pair(std::string_view label)
{
    if (label == "XY") return SettingPair::XY;
    if (label == "XY'" || label == "XYp") return SettingPair::XYp;
    if (label == "X'Y" || label == "XpY") return SettingPair::XpY;
    if (label == "X'Y'" || label == "XpYp") return SettingPair::XpYp;
    throw std::invalid_argument("unknown setting-pair label: " + std::string(label));
}

ContinuousModel::ContinuousModel(std::string name, DensityFn density, OutcomeFn outcome_a, OutcomeFn outcome_b,
                                 std::optional<SectorFn> sectors)
    : name_(std::move(name))
    , density_(std::move(density))
    , outcome_a_(std::move(outcome_a))
    , outcome_b_(std::move(outcome_b))
    , sectors_(std::move(sectors))
{
    if (!density_ || !outcome_a_ || !outcome_b_ || (sectors_ && !*sectors_)) {
        throw std::invalid_argument("ContinuousModel: empty function");
    }
}

namespace {

int sign_outcome_a(const Direction& x, const Direction& lambda)
{
    return sign_of(x.dot(lambda));
}

int sign_outcome_b(const Direction& y, const Direction& lambda)
{
    return -sign_of(y.dot(lambda));
}

} // namespace

ContinuousModel ContinuousModel::sector_constant(std::string name, SectorFn sectors)
{
    auto density = [sectors](const Direction& x, const Direction& y, const Direction& lambda) {
        return sectors(x, y).at(sign_pattern(x, y, lambda));
    };
    return ContinuousModel(std::move(name), density, sign_outcome_a, sign_outcome_b, std::move(sectors));
}

SectorDensity ContinuousModel::sector_density(const Direction& x, const Direction& y) const
{
    if (!sectors_) {
        throw std::logic_error("model '" + name_ + "' is not sector-constant");
    }
    return (*sectors_)(x, y);
}

SectorDensity singlet_sector_density(double cos_xy, double phi_xy) noexcept
{
    const double equal_den = 8.0 * (kPi - phi_xy);
    const double unequal_den = 8.0 * phi_xy;
    return {equal_den > 0.0 ? (1.0 + cos_xy) / equal_den : 0.0,
            unequal_den > 0.0 ? (1.0 - cos_xy) / unequal_den : 0.0};
}

ContinuousModel singlet_model()
{
    auto density = [](const Direction& x, const Direction& y, const Direction& lambda) {
        const double c = std::clamp(x.dot(y), -1.0, 1.0);
        const double phi = std::acos(c);
        if (sign_of(x.dot(lambda)) == sign_of(y.dot(lambda))) {
            return phi < kPi ? (1.0 + c) / (8.0 * (kPi - phi)) : 0.0;
        }
        return phi > 0.0 ? (1.0 - c) / (8.0 * phi) : 0.0;
    };
    auto sectors = [](const Direction& x, const Direction& y) {
        const double c = std::clamp(x.dot(y), -1.0, 1.0);
        return singlet_sector_density(c, std::acos(c));
    };
    return ContinuousModel("singlet", density, sign_outcome_a, sign_outcome_b, sectors);
}

ContinuousModel bell_uniform_model()
{
    return ContinuousModel::sector_constant("bell-uniform", [](const Direction&, const Direction&) {
        constexpr double uniform = 1.0 / kFourPi;
        return SectorDensity{uniform, uniform};
    });
}

DiscreteModel::DiscreteModel(std::vector<std::string> labels, OutcomeTable outcomes, DensityTable densities)
    : labels_(std::move(labels))
    , outcomes_(std::move(outcomes))
    , densities_(std::move(densities))
{
    const std::size_t n = labels_.size();
    if (n == 0) {
        throw std::invalid_argument("DiscreteModel: no hidden-variable labels");
    }
    for (Setting s : kAllSettings) {
        const auto& col = outcomes_[index_of(s)];
        if (col.size() != n) {
            throw std::invalid_argument("DiscreteModel: outcome column " + std::string(to_string(s)) +
                                        " has wrong length");
        }
        if (std::any_of(col.begin(), col.end(), [](int v) { return v != 1 && v != -1; })) {
            throw std::invalid_argument("DiscreteModel: outcomes must be +1 or -1");
        }
    }
    for (SettingPair p : kAllPairs) {
        const auto& col = densities_[index_of(p)];
        if (col.size() != n) {
            throw std::invalid_argument("DiscreteModel: density column " + std::string(to_string(p)) +
                                        " has wrong length");
        }
        if (std::any_of(col.begin(), col.end(), [](double v) { return !std::isfinite(v) || v < 0.0; })) {
            throw std::invalid_argument("DiscreteModel: densities must be finite and nonnegative");
        }
    }
}

namespace {

void validate(const TableParams& params)
{
    if (!(params.p >= 0.0 && params.p <= 1.0 / 3.0)) {
        throw std::invalid_argument("table model: p must lie in [0, 1/3]");
    }
    for (int s : params.signs) {
        if (s != 1 && s != -1) {
            throw std::invalid_argument("table model: signs must be +1 or -1");
        }
    }
}

std::vector<std::string> table_labels()
{
    return {"lambda1", "lambda2", "lambda3", "lambda4", "lambda5"};
}

// Rows lambda1..lambda5; columns X, X', Y, Y'.
DiscreteModel::OutcomeTable table_outcomes(const std::array<int, 5>& sg)
{
    const auto [a, b, c, d, e] = sg;
    return {{
        {a, b, c, d, e},     // X
        {a, -b, c, -d, e},   // X'
        {a, b, c, -d, e},    // Y
        {a, b, -c, d, e},    // Y'
    }};
}

} // namespace

DiscreteModel table1_model(const TableParams& params)
{
    validate(params);
    const double p = params.p;
    const double rest = 1.0 - 3.0 * p;
    DiscreteModel::DensityTable rho = {{
        {p, p, p, 0.0, rest},   // XY
        {p, p, 0.0, p, rest},   // XY'
        {p, 0.0, p, p, rest},   // X'Y
        {0.0, p, p, p, rest},   // X'Y'
    }};
    return DiscreteModel(table_labels(), table_outcomes(params.signs), std::move(rho));
}

DiscreteModel table2_model(const TableParams& params)
{
    validate(params);
    const double p = params.p;
    const double q = (1.0 - p) / 2.0;
    DiscreteModel::DensityTable rho = {{
        {p, q, q, 0.0, 0.0},   // XY
        {q, p, 0.0, q, 0.0},   // XY'
        {q, 0.0, p, q, 0.0},   // X'Y
        {0.0, q, q, p, 0.0},   // X'Y'
    }};
    return DiscreteModel(table_labels(), table_outcomes(params.signs), std::move(rho));
}

} // namespace bellscope

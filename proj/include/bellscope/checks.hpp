#pragma once

#include "bellscope/measures.hpp"

#include <span>
#include <string>
#include <vector>

namespace bellscope {

/// One named diagnostic: pass iff |value - expected| <= tolerance.
struct CheckResult {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
};

CheckResult make_check(std::string name, double value, double expected, double tolerance);

struct CheckReport {
    std::vector<CheckResult> checks;

    bool pass() const noexcept;
};

/// Observed marginals of each party must not depend on the other party's
/// setting. For every x in the grid, p_first(+) is compared across all y in the
/// grid (and symmetrically for the second party) using joint_exact. One check
/// per party records the largest spread.
CheckReport no_signalling_check(const ContinuousModel& model, std::span<const Direction> grid, double tol);

/// Monte Carlo variant: every pair of marginal estimates must agree within
/// 4 combined standard errors. The recorded value is the largest z-score.
CheckReport no_signalling_check(const ContinuousModel& model, std::span<const Direction> grid,
                                const McOptions& mc);

/// Four checks: X marginal under XY vs XY', X' under X'Y vs X'Y', Y under
/// XY vs X'Y, Y' under XY' vs X'Y'.
CheckReport no_signalling_check(const DiscreteModel& model, double tol);

/// Integral of the density over the sphere via lune areas.
CheckResult normalization_check(const ContinuousModel& model, const Direction& x, const Direction& y, double tol);

/// Monte Carlo integral of the density; passes within 4 standard errors.
CheckResult normalization_check(const ContinuousModel& model, const Direction& x, const Direction& y,
                                const McOptions& mc);

CheckResult normalization_check(const DiscreteModel& model, SettingPair pair, double tol);

} // namespace bellscope

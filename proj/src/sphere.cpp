#include "bellscope/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bellscope {

namespace {
constexpr double kDedupTol = 1e-12;
}

Direction Direction::from_cartesian(double x, double y, double z)
{
    const double norm = std::sqrt(x * x + y * y + z * z);
    if (!std::isfinite(norm) || norm == 0.0) {
        throw std::invalid_argument("Direction requires a finite nonzero vector");
    }
    return Direction(x / norm, y / norm, z / norm);
}

Direction Direction::from_spherical(double theta, double phi)
{
    const double s = std::sin(theta);
    return from_cartesian(s * std::cos(phi), s * std::sin(phi), std::cos(theta));
}

double Direction::azimuth() const noexcept
{
    return wrap_azimuth(std::atan2(y_, x_));
}

bool Direction::is_equatorial(double tol) const noexcept
{
    return std::abs(z_) <= tol;
}

double AzimuthInterval::length() const noexcept
{
    return hi > lo ? hi - lo : hi - lo + kTwoPi;
}

double AzimuthInterval::midpoint() const noexcept
{
    return wrap_azimuth(lo + 0.5 * length());
}

double wrap_azimuth(double phi) noexcept
{
    double r = std::fmod(phi, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    // r + 2pi can round up to exactly 2pi for tiny negative input.
    if (r >= kTwoPi) {
        r = 0.0;
    }
    return r;
}

double angle_between(const Direction& u, const Direction& v) noexcept
{
    return std::acos(std::clamp(u.dot(v), -1.0, 1.0));
}

Direction equatorial(double azimuth)
{
    return Direction::from_cartesian(std::cos(azimuth), std::sin(azimuth), 0.0);
}

SignPattern sign_pattern(const Direction& x, const Direction& y, const Direction& lambda) noexcept
{
    return {sign_of(x.dot(lambda)), sign_of(y.dot(lambda))};
}

double sector_area(double phi_xy, SignPattern pattern)
{
    if (!(phi_xy >= 0.0 && phi_xy <= kPi)) {
        throw std::domain_error("sector_area: phi_xy must lie in [0, pi]");
    }
    return pattern.equal() ? 2.0 * (kPi - phi_xy) : 2.0 * phi_xy;
}

std::vector<AzimuthInterval> azimuth_partition(std::span<const double> boundaries)
{
    if (boundaries.empty()) {
        throw std::invalid_argument("azimuth_partition: no boundaries");
    }
    std::vector<double> cuts;
    cuts.reserve(boundaries.size());
    for (double b : boundaries) {
        cuts.push_back(wrap_azimuth(b));
    }
    std::sort(cuts.begin(), cuts.end());

    std::vector<double> unique;
    unique.reserve(cuts.size());
    for (double c : cuts) {
        if (unique.empty() || c - unique.back() > kDedupTol) {
            unique.push_back(c);
        }
    }
    // A cut just below 2pi is the same cut as one at 0.
    while (unique.size() > 1 && unique.front() + kTwoPi - unique.back() <= kDedupTol) {
        unique.pop_back();
    }

    std::vector<AzimuthInterval> out;
    out.reserve(unique.size());
    for (std::size_t i = 0; i < unique.size(); ++i) {
        out.push_back({unique[i], unique[(i + 1) % unique.size()]});
    }
    return out;
}

} // namespace bellscope

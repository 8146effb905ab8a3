#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace bellscope {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kFourPi = 4.0 * std::numbers::pi;

/// Unit vector on the 2-sphere.
///
/// Serves both as a measurement direction and as the value of the continuous
/// hidden variable. Construction always normalizes, so every instance satisfies
/// |v| = 1 up to rounding.
class Direction {
public:
    /// The +z pole.
    Direction() noexcept = default;

    /// Throws std::invalid_argument for a zero-length or non-finite vector.
    static Direction from_cartesian(double x, double y, double z);

    /// theta is the polar angle from +z, phi the azimuth from +x.
    static Direction from_spherical(double theta, double phi);

    double x() const noexcept { return x_; }
    double y() const noexcept { return y_; }
    double z() const noexcept { return z_; }

    double dot(const Direction& other) const noexcept
    {
        return x_ * other.x_ + y_ * other.y_ + z_ * other.z_;
    }

    Direction operator-() const noexcept { return Direction(-x_, -y_, -z_); }

    /// Azimuth in [0, 2pi).
    double azimuth() const noexcept;

    bool is_equatorial(double tol = 1e-12) const noexcept;

    friend bool operator==(const Direction&, const Direction&) = default;

private:
    Direction(double x, double y, double z) noexcept : x_(x), y_(y), z_(z) {}

    double x_ = 0.0;
    double y_ = 0.0;
    double z_ = 1.0;
};

/// Signs of x.lambda and y.lambda for one measurement pair.
struct SignPattern {
    int s_x = 1;
    int s_y = 1;

    bool equal() const noexcept { return s_x == s_y; }
    friend bool operator==(const SignPattern&, const SignPattern&) = default;
};

inline constexpr SignPattern kSignPatterns[4] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};

/// Half-open arc [lo, hi) of the equatorial azimuth circle; wraps through 0
/// when hi <= lo. A single-boundary partition yields lo == hi, the full circle.
struct AzimuthInterval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const noexcept;
    double midpoint() const noexcept;
};

/// Angle in [0, pi] from the clamped dot product.
double angle_between(const Direction& u, const Direction& v) noexcept;

/// (cos phi, sin phi, 0).
Direction equatorial(double azimuth);

/// +1 for t >= 0, -1 otherwise. The t == 0 boundary has measure zero under
/// every density in use; the convention only keeps outcomes deterministic.
constexpr int sign_of(double t) noexcept { return t >= 0.0 ? 1 : -1; }

SignPattern sign_pattern(const Direction& x, const Direction& y, const Direction& lambda) noexcept;

/// Area of the lune pair member where (sign x.lambda, sign y.lambda) == pattern:
/// 2(pi - phi_xy) for equal signs, 2 phi_xy otherwise.
/// Throws std::domain_error unless 0 <= phi_xy <= pi.
double sector_area(double phi_xy, SignPattern pattern);

/// Sorted, deduplicated (1e-12) partition of the azimuth circle cut at the
/// given angles (reduced mod 2pi). Throws std::invalid_argument when empty.
std::vector<AzimuthInterval> azimuth_partition(std::span<const double> boundaries);

/// Reduces an angle into [0, 2pi).
double wrap_azimuth(double phi) noexcept;

} // namespace bellscope

#pragma once
// Independent reference values for the unit and acceptance tests. Nothing
// here calls into the library's integration engines.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

/// Singlet joint probability P(A = a, B = b) for settings at angle phi.
inline double singlet_joint(int a, int b, double cos_xy)
{
    return (1.0 - a * b * cos_xy) / 4.0;
}

/// Bell's uniform model: <AB> with B = -sign(y . lambda).
inline double bell_uniform_correlation(double phi)
{
    return -1.0 + 2.0 * phi / kPi;
}

/// Singlet-model density written out directly from the outcome signs of x and y.
/// Coplanar helper: settings are azimuths, lambda is an azimuth in the plane.
inline double singlet_density(double ax, double ay, double lam)
{
    const double c = std::cos(ax - ay);
    const double phi = std::acos(std::clamp(c, -1.0, 1.0));
    const bool sx = std::cos(lam - ax) >= 0.0;
    const bool sy = std::cos(lam - ay) >= 0.0;
    if (sx == sy) {
        return kPi - phi > 0.0 ? (1.0 + c) / (8.0 * (kPi - phi)) : 0.0;
    }
    return phi > 0.0 ? (1.0 - c) / (8.0 * phi) : 0.0;
}

/// Integral over the sphere of |rho(x1, y1) - rho(x2, y2)| for coplanar
/// settings, by midpoint quadrature in azimuth. The polar integral of
/// sin(theta) contributes the factor 2.
inline double coplanar_tv_quadrature(std::array<double, 2> p1, std::array<double, 2> p2, std::size_t n = 2000000)
{
    const double h = 2.0 * kPi / static_cast<double>(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lam = (static_cast<double>(i) + 0.5) * h;
        sum += std::abs(singlet_density(p1[0], p1[1], lam) - singlet_density(p2[0], p2[1], lam));
    }
    return 2.0 * h * sum;
}

/// Distance between the XY and X'Y' densities along phi_xy = phi' = t of the
/// common-bisector family, in closed form. Valid for 0 < t <= pi/2; beyond
/// that the sign sectors overlap differently.
inline double singlet_diagonal_tv(double t)
{
    return t * (1.0 + std::cos(t)) / (kPi - t) - (1.0 - std::cos(t));
}

/// Value of the diagonal objective at t = pi/4.
inline const double kSingletReferenceM = 2.0 * (std::numbers::sqrt2 - 1.0) / 3.0;

/// Golden-section maximiser on [lo, hi] for a unimodal function.
inline double golden_max(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12)
{
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    while (b - a > tol) {
        if (f(c) > f(d)) {
            b = d;
        } else {
            a = c;
        }
        c = b - g * (b - a);
        d = a + g * (b - a);
    }
    return 0.5 * (a + b);
}

/// Lune area for settings at angle phi by polar quadrature: the fraction of
/// azimuths where the signs agree, for a fixed x at the north pole and y
/// tilted by phi, integrated numerically over theta.
inline double lune_area_quadrature(double phi, bool equal_signs, std::size_t n = 4000)
{
    // Place x and y on the equator at azimuths 0 and phi; lambda ranges over
    // the sphere in (theta, azimuth). Only the azimuth decides the signs.
    double count = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lam = (static_cast<double>(i) + 0.5) * 2.0 * kPi / static_cast<double>(n);
        const bool sx = std::cos(lam) >= 0.0;
        const bool sy = std::cos(lam - phi) >= 0.0;
        count += (sx == sy) == equal_signs ? 1.0 : 0.0;
    }
    return 2.0 * (2.0 * kPi / static_cast<double>(n)) * count;
}

} // namespace oracle

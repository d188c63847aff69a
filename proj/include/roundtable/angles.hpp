#pragma once

#include <cmath>
#include <numbers>

namespace roundtable {

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Wraps an angle to (-180, 180].
inline double wrap_deg(double deg) {
    double w = deg - 360.0 * std::floor((deg + 180.0) / 360.0);
    if (w <= -180.0) w += 360.0;  // floor rounding can land exactly on -180
    return w;
}

}  // namespace roundtable

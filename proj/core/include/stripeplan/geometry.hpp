// SPDX-License-Identifier: Apache-2.0
//
// stripeplan: radio stripe deployment planning for near-field wireless power transfer
// Copyright (C) 2026 The stripeplan authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace stripeplan
{

// Speed of light in vacuum, m/s
inline constexpr double speed_of_light = 299792458.0;

inline constexpr double pi = 3.14159265358979323846;

struct Point3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Point3 operator+(const Point3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
    Point3 operator-(const Point3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
    Point3 operator*(double s) const { return {x * s, y * s, z * s}; }
    bool operator==(const Point3 &o) const = default;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

inline double distance(const Point3 &a, const Point3 &b)
{
    return (a - b).norm();
}

inline double horizontal_distance(const Point3 &a, const Point3 &b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

// Wavelength for a carrier frequency in Hz
inline double wavelength(double frequency_hz)
{
    if (!(frequency_hz > 0.0))
        throw std::invalid_argument("frequency must be positive");
    return speed_of_light / frequency_hz;
}

} // namespace stripeplan

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

#include "stripeplan/geometry.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stripeplan
{

class ScenarioError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct Hotspot
{
    Point3 center;
    double density = 1.0; // expected number of devices (eta)

    // Vertical gap between the ceiling and the hotspot
    double elevation(double ceiling_h) const { return ceiling_h - center.z; }
};

// Axis-aligned horizontal rectangle [x0,x1] x [y0,y1]
struct Rect
{
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
    bool contains(const Point3 &p, double tol = 0.0) const
    {
        return p.x >= x0 - tol && p.x <= x1 + tol && p.y >= y0 - tol && p.y <= y1 + tol;
    }
};

struct Scenario
{
    double area_x = 25.0;
    double area_y = 25.0;
    double ceiling_h = 5.0;
    std::vector<Hotspot> hotspots;
    double frequency_hz = 10e9;
    double boresight_b = 2.0;
    double element_spacing_kappa = 0.0; // 0 selects half a wavelength
    std::vector<double> power_budgets;  // per stripe; empty means total_power_w split equally
    double total_power_w = 1.0;
    double stripe_length = 1.5;

    double wavelength() const { return stripeplan::wavelength(frequency_hz); }
    double kappa() const;
    int elements_per_stripe() const;
    Rect area() const { return {0.0, 0.0, area_x, area_y}; }

    // Per-stripe budgets for U stripes
    std::vector<double> stripe_budgets(int U) const;

    // Throws ScenarioError naming the field and the violated bound
    void validate() const;
};

// Element count for a stripe of the given length: floor(L / kappa) + 1
int element_count(double stripe_length, double kappa);

Scenario parse_scenario(const std::string &json_text);
Scenario load_scenario(const std::filesystem::path &path);
std::string scenario_to_json(const Scenario &s);

struct ZRange
{
    double lo = 0.8;
    double hi = 1.2;
};

std::vector<Hotspot> generate_hotspots(double area_x, double area_y, double ceiling_h, int count,
                                       ZRange z_range, std::uint64_t seed);

// Uniform points in the horizontal disc around the hotspot center (same z).
// When bounds is given, samples falling outside are redrawn.
std::vector<Point3> sample_users(const Hotspot &hotspot, double radius, int count, std::uint64_t seed,
                                 const std::optional<Rect> &bounds = std::nullopt);

// Stateless 64-bit mixer used to derive independent sub-seeds
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

} // namespace stripeplan

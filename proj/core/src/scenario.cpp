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

#include "stripeplan/scenario.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace stripeplan
{

using nlohmann::json;

namespace
{

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

double require_number(const json &j, const char *key)
{
    if (!j.contains(key))
        throw ScenarioError(std::string("missing field '") + key + "'");
    if (!j.at(key).is_number())
        throw ScenarioError(std::string("field '") + key + "' must be a number");
    return j.at(key).get<double>();
}

Point3 parse_point(const json &j, const std::string &what)
{
    if (j.is_array() && j.size() == 3)
        return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
    if (j.is_object())
        return {j.at("x").get<double>(), j.at("y").get<double>(), j.at("z").get<double>()};
    throw ScenarioError(what + ": expected [x, y, z]");
}

} // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream)
{
    // splitmix64 finalizer over the combined value
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

int element_count(double stripe_length, double kappa)
{
    if (!(kappa > 0.0))
        throw ScenarioError("element_spacing_kappa must be positive");
    if (!(stripe_length >= 0.0))
        throw ScenarioError("stripe_length must be nonnegative");
    // small slack so that L = (N-1) kappa computed in floating point maps back to N
    return static_cast<int>(std::floor(stripe_length / kappa + 1e-9)) + 1;
}

double Scenario::kappa() const
{
    return element_spacing_kappa > 0.0 ? element_spacing_kappa : 0.5 * wavelength();
}

int Scenario::elements_per_stripe() const
{
    return element_count(stripe_length, kappa());
}

std::vector<double> Scenario::stripe_budgets(int U) const
{
    if (U < 1)
        throw ScenarioError("stripe count must be at least 1");
    if (power_budgets.empty())
        return std::vector<double>(static_cast<std::size_t>(U), total_power_w / U);
    if (static_cast<int>(power_budgets.size()) == U)
        return power_budgets;
    throw ScenarioError("power_budgets has " + std::to_string(power_budgets.size()) + " entries but " +
                        std::to_string(U) + " stripes are requested");
}

void Scenario::validate() const
{
    auto positive = [](double v, const char *name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw ScenarioError(std::string(name) + " must be positive and finite (got " + fmt(v) + ")");
    };
    positive(area_x, "area_x");
    positive(area_y, "area_y");
    positive(ceiling_h, "ceiling_h");
    positive(frequency_hz, "frequency_hz");
    positive(total_power_w, "total_power_w");
    if (!(boresight_b >= 0.0) || !std::isfinite(boresight_b))
        throw ScenarioError("boresight_b must be >= 0 (got " + fmt(boresight_b) + ")");
    if (element_spacing_kappa < 0.0 || !std::isfinite(element_spacing_kappa))
        throw ScenarioError("element_spacing_kappa must be positive (got " + fmt(element_spacing_kappa) + ")");
    const double half_lambda = 0.5 * wavelength();
    if (kappa() < half_lambda * (1.0 - 1e-12))
        throw ScenarioError("element_spacing_kappa: spacing below half-wavelength (kappa = " + fmt(kappa()) +
                            " m < lambda/2 = " + fmt(half_lambda) + " m)");
    for (double p : power_budgets)
        positive(p, "power_budgets entry");
    if (elements_per_stripe() < 2)
        throw ScenarioError("stripe_length: element count per stripe must be >= 2 (stripe_length = " +
                            fmt(stripe_length) + " m, kappa = " + fmt(kappa()) + " m)");
    if (hotspots.empty())
        throw ScenarioError("hotspots: at least one hotspot is required");
    for (std::size_t i = 0; i < hotspots.size(); ++i)
    {
        const auto &h = hotspots[i];
        const std::string tag = "hotspots[" + std::to_string(i) + "]";
        if (!h.center.finite())
            throw ScenarioError(tag + ": non-finite coordinate");
        if (!area().contains(h.center))
            throw ScenarioError(tag + ": hotspot outside area (" + fmt(h.center.x) + ", " + fmt(h.center.y) +
                                ") not in [0, " + fmt(area_x) + "] x [0, " + fmt(area_y) + "]");
        if (!(h.center.z < ceiling_h))
            throw ScenarioError(tag + ": hotspot z = " + fmt(h.center.z) + " must be below ceiling_h = " +
                                fmt(ceiling_h));
        if (!(h.density > 0.0))
            throw ScenarioError(tag + ": density must be > 0 (got " + fmt(h.density) + ")");
    }
}

Scenario parse_scenario(const std::string &json_text)
{
    json j;
    try
    {
        j = json::parse(json_text);
    }
    catch (const json::parse_error &e)
    {
        throw ScenarioError(std::string("parse error: ") + e.what());
    }
    if (!j.is_object())
        throw ScenarioError("parse error: scenario must be a JSON object");

    Scenario s;
    try
    {
        s.area_x = require_number(j, "area_x");
        s.area_y = require_number(j, "area_y");
        s.ceiling_h = require_number(j, "ceiling_h");
        s.frequency_hz = require_number(j, "frequency_hz");
        s.boresight_b = j.value("boresight_b", 2.0);
        s.stripe_length = require_number(j, "stripe_length");
        if (j.contains("element_spacing_kappa") && !j.at("element_spacing_kappa").is_null())
        {
            const auto &k = j.at("element_spacing_kappa");
            if (k.is_string())
            {
                if (k.get<std::string>() != "half_wavelength")
                    throw ScenarioError("element_spacing_kappa: expected a number or \"half_wavelength\"");
            }
            else
                s.element_spacing_kappa = k.get<double>();
        }
        if (j.contains("power_budgets"))
            s.power_budgets = j.at("power_budgets").get<std::vector<double>>();
        s.total_power_w = j.value("total_power_w", 1.0);

        if (j.contains("hotspots"))
        {
            for (const auto &h : j.at("hotspots"))
            {
                Hotspot hs;
                hs.center = parse_point(h.at("center"), "hotspot center");
                hs.density = h.value("density", 1.0);
                s.hotspots.push_back(hs);
            }
        }
        if (j.contains("hotspot_generation"))
        {
            const auto &g = j.at("hotspot_generation");
            ZRange zr;
            if (g.contains("z_range"))
            {
                auto z = g.at("z_range").get<std::vector<double>>();
                if (z.size() != 2)
                    throw ScenarioError("hotspot_generation.z_range: expected [lo, hi]");
                zr = {z[0], z[1]};
            }
            auto gen = generate_hotspots(s.area_x, s.area_y, s.ceiling_h, g.at("count").get<int>(), zr,
                                         g.value("seed", std::uint64_t{1}));
            s.hotspots.insert(s.hotspots.end(), gen.begin(), gen.end());
        }
    }
    catch (const json::exception &e)
    {
        throw ScenarioError(std::string("parse error: ") + e.what());
    }
    s.validate();
    return s;
}

Scenario load_scenario(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ScenarioError("cannot open scenario file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::string scenario_to_json(const Scenario &s)
{
    json j;
    j["area_x"] = s.area_x;
    j["area_y"] = s.area_y;
    j["ceiling_h"] = s.ceiling_h;
    j["frequency_hz"] = s.frequency_hz;
    j["boresight_b"] = s.boresight_b;
    if (s.element_spacing_kappa > 0.0)
        j["element_spacing_kappa"] = s.element_spacing_kappa;
    else
        j["element_spacing_kappa"] = "half_wavelength";
    if (!s.power_budgets.empty())
        j["power_budgets"] = s.power_budgets;
    j["total_power_w"] = s.total_power_w;
    j["stripe_length"] = s.stripe_length;
    j["hotspots"] = json::array();
    for (const auto &h : s.hotspots)
        j["hotspots"].push_back({{"center", {h.center.x, h.center.y, h.center.z}}, {"density", h.density}});
    return j.dump(2);
}

std::vector<Hotspot> generate_hotspots(double area_x, double area_y, double ceiling_h, int count, ZRange z_range,
                                       std::uint64_t seed)
{
    if (count < 1)
        throw ScenarioError("hotspot count must be >= 1");
    if (!(z_range.lo < z_range.hi) || !(z_range.lo > 0.0) || !(z_range.hi < ceiling_h))
        throw ScenarioError("z_range must be a nonempty interval inside (0, ceiling_h)");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(0.0, area_x), uy(0.0, area_y), uz(z_range.lo, z_range.hi);
    std::vector<Hotspot> out(static_cast<std::size_t>(count));
    for (auto &h : out)
    {
        h.center.x = ux(rng);
        h.center.y = uy(rng);
        h.center.z = uz(rng);
        h.density = 1.0;
    }
    return out;
}

std::vector<Point3> sample_users(const Hotspot &hotspot, double radius, int count, std::uint64_t seed,
                                 const std::optional<Rect> &bounds)
{
    if (!(radius >= 0.0))
        throw ScenarioError("user radius must be >= 0");
    if (count < 0)
        throw ScenarioError("user count must be >= 0");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::vector<Point3> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k)
    {
        Point3 p = hotspot.center;
        for (int attempt = 0; attempt < 1000; ++attempt)
        {
            const double r = radius * std::sqrt(u01(rng));
            const double phi = 2.0 * pi * u01(rng);
            p = {hotspot.center.x + r * std::cos(phi), hotspot.center.y + r * std::sin(phi), hotspot.center.z};
            if (!bounds || bounds->contains(p))
                break;
        }
        if (bounds && !bounds->contains(p))
            p = hotspot.center;
        out.push_back(p);
    }
    return out;
}

} // namespace stripeplan

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

#include "stripeplan/deployment/deploy.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace stripeplan;
using namespace stripeplan::deploy;

namespace
{

constexpr double hc = 5.0;
constexpr double kappa = 0.015;

DeploymentProblem problem(std::vector<Hotspot> hs, int N)
{
    DeploymentProblem p;
    p.hotspots = std::move(hs);
    p.N = N;
    p.kappa = kappa;
    p.b = 2.0;
    p.budget = 1.0;
    p.ceiling_h = hc;
    return p;
}

bool feasible(const StripeLayout &L)
{
    return spacing_report(L).feasible(L.kappa);
}

} // namespace

TEST(Polygon, Radius)
{
    EXPECT_NEAR(polygon_radius(6, kappa), kappa, 1e-15);
    EXPECT_NEAR(polygon_radius(4, 0.015), 0.0106066, 1e-7);
    EXPECT_THROW(polygon_layout({0, 0, hc}, 2, kappa), std::invalid_argument);
}

TEST(Polygon, SidesEqualKappa)
{
    for (int N : {3, 7, 24, 101})
    {
        const auto L = polygon_layout({1, 2, hc}, N, kappa);
        ASSERT_EQ(L.size(), N);
        for (int j = 0; j + 1 < N; ++j)
            EXPECT_NEAR(horizontal_distance(L.elements[j], L.elements[j + 1]), kappa, 1e-12);
        EXPECT_TRUE(feasible(L));
    }
}

TEST(Line, Offsets)
{
    const auto L = line_layout({0, 0, hc}, 4, 1.0, pi / 2.0);
    const double expected[4] = {-1.0, 0.0, 1.0, 2.0};
    for (int j = 0; j < 4; ++j)
    {
        EXPECT_NEAR(L.elements[j].x, 0.0, 1e-12);
        EXPECT_NEAR(L.elements[j].y, expected[j], 1e-12);
    }
    for (const auto &q : line_layout({3, 7, hc}, 9, kappa, 0.0).elements)
        EXPECT_EQ(q.y, 7.0);
    EXPECT_NEAR(array_diameter(line_layout({0, 0, hc}, 9, kappa, 1.1)), 8 * kappa, 1e-12);
}

TEST(Baselines, UpaNearestSquare)
{
    const std::vector<Hotspot> hs{{{1, 1, 1}, 1.0}, {{3, 2, 1}, 1.0}, {{2, 6, 1}, 1.0}};
    const auto upa = baseline_layout(BaselineKind::center_upa, hs, 101, kappa, hc);
    EXPECT_EQ(upa.size(), 100);
    double mx = 0.0, my = 0.0;
    for (const auto &q : upa.elements)
    {
        mx += q.x;
        my += q.y;
    }
    EXPECT_NEAR(mx / upa.size(), 2.0, 1e-12);
    EXPECT_NEAR(my / upa.size(), 3.0, 1e-12);
    EXPECT_EQ(baseline_layout(BaselineKind::center_upa, hs, 24, kappa, hc).size(), 25);
}

TEST(Baselines, RectangleLoop)
{
    const std::vector<Hotspot> hs{{{1, 1, 1}, 1.0}};
    const auto sq = baseline_layout(BaselineKind::center_rectangle, hs, 4, kappa, hc);
    ASSERT_EQ(sq.size(), 4);
    for (int j = 0; j < 4; ++j)
        EXPECT_NEAR(horizontal_distance(sq.elements[j], sq.elements[(j + 1) % 4]), kappa, 1e-12);
    for (int N : {5, 24, 25})
        EXPECT_TRUE(feasible(baseline_layout(BaselineKind::center_rectangle, hs, N, kappa, hc)));
    EXPECT_EQ(parse_baseline("center_upa"), BaselineKind::center_upa);
    EXPECT_THROW(parse_baseline("square"), std::invalid_argument);
}

TEST(InitialLoop, FeasibleWithOpenEnds)
{
    for (int N : {2, 3, 8, 24, 25})
    {
        const auto L = initial_loop({5, 5, hc}, N, kappa);
        ASSERT_EQ(L.size(), N);
        EXPECT_TRUE(feasible(L));
        if (N > 3)
        {
            EXPECT_GE(horizontal_distance(L.elements.front(), L.elements.back()), 2 * kappa - 1e-12);
        }
    }
}

TEST(Mapping, SinglePair)
{
    const std::vector<Point3> raw{{0, 0, hc}, {kappa / 2, 0, hc}};
    const auto r = map_to_feasible(raw, kappa);
    ASSERT_TRUE(r.feasible);
    EXPECT_EQ(r.layout.elements[0], raw[0]);
    EXPECT_NEAR(r.layout.elements[1].x, kappa, 1e-15);
    EXPECT_NEAR(r.layout.elements[1].y, 0.0, 1e-15);
}

TEST(Mapping, FeasibleInputUnchanged)
{
    const auto line = line_layout({1, 1, hc}, 12, kappa, 0.4);
    const auto r = map_to_feasible(line.elements, kappa);
    ASSERT_TRUE(r.feasible);
    EXPECT_EQ(r.sweeps, 0);
    for (int j = 0; j < 12; ++j)
        EXPECT_EQ(r.layout.elements[j], line.elements[j]);
}

TEST(Mapping, RandomClouds)
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 100; ++k)
    {
        std::vector<Point3> raw;
        while (raw.size() < 20)
        {
            const double x = u(rng), y = u(rng);
            if (x * x + y * y <= 1.0)
                raw.push_back({2.0 + x * kappa / 4, 2.0 + y * kappa / 4, hc});
        }
        const auto r = map_to_feasible(raw, kappa);
        ASSERT_TRUE(r.feasible) << r.diagnostic;
        const auto rep = spacing_report(r.layout);
        EXPECT_LE(rep.max_consecutive_error, 1e-9);
        EXPECT_GE(rep.min_pairwise, kappa - 1e-9);
    }
}

TEST(Objective, GainsAndMinRatio)
{
    const auto p = problem({{{0, 0, 1}, 1.0}, {{1, 0, 1}, 2.0}}, 3);
    const auto L = line_layout({0.5, 0, hc}, 3, kappa, 0.0);
    const auto G = hotspot_gains(p, L.elements);
    ASSERT_EQ(G.size(), 2u);
    for (int i = 0; i < 2; ++i)
        EXPECT_NEAR(G[i], normalized_gain(L.elements, p.hotspots[i].center, 2.0, hc), 1e-15);
    const std::vector<double> P{0.4, 0.6};
    EXPECT_NEAR(deployment_objective(p, L.elements, P), std::min(0.4 * G[0] / 1.0, 0.6 * G[1] / 2.0), 1e-15);
}

TEST(PolygonDeploy, SingleHotspotCentersAbove)
{
    const auto p = problem({{{3.0, 4.0, 1.0}, 1.0}}, 8);
    const auto r = polygon_deploy(p, {3.4, 3.7, hc});
    EXPECT_TRUE(r.success);
    EXPECT_TRUE(feasible(r.layout));
    // the gain is flat at the top, so the position tolerance is loose and the objective one tight
    EXPECT_NEAR(r.shape_center.x, 3.0, 5e-3);
    EXPECT_NEAR(r.shape_center.y, 4.0, 5e-3);
    const auto above = polygon_layout({3.0, 4.0, hc}, 8, kappa);
    const double best = deployment_objective(p, above.elements, std::vector<double>{p.budget});
    EXPECT_NEAR(r.objective, best, 1e-5 * best);
    for (std::size_t k = 1; k < r.history.size(); ++k)
        EXPECT_GE(r.history[k], r.history[k - 1] * (1.0 - 1e-9));
}

TEST(PolygonDeploy, SymmetricPairOnBisector)
{
    const auto p = problem({{{2.0, 2.0, 1.0}, 1.0}, {{4.0, 2.0, 1.0}, 1.0}}, 8);
    const auto r = polygon_deploy(p, {2.5, 2.6, hc});
    EXPECT_NEAR(r.shape_center.x, 3.0, 1e-3);
    EXPECT_NEAR(r.powers[0], r.powers[1], 1e-3);
}

TEST(LineDeploy, AlignsWithHotspotAxis)
{
    auto p = problem({{{1.0, 3.0, 1.0}, 1.0}, {{5.0, 3.0, 1.0}, 1.0}}, 16);
    DeployOptions o;
    o.zeta = 8;
    const auto r = line_deploy(p, {3.0, 3.1, hc}, o);
    EXPECT_TRUE(feasible(r.layout));
    const double c = std::abs(std::cos(r.line_angle));
    EXPECT_GT(c, 0.9);
    double best = 0.0;
    for (int k = 1; k <= o.zeta; ++k)
    {
        const auto at = line_deploy_at(p, {3.0, 3.1, hc}, pi * k / o.zeta, o);
        best = std::max(best, at.objective);
    }
    EXPECT_NEAR(r.objective, best, 1e-12 * best);
}

TEST(LineDeploy, SingleAngleIsPi)
{
    auto p = problem({{{1.0, 3.0, 1.0}, 1.0}}, 6);
    DeployOptions o;
    o.zeta = 1;
    const auto r = line_deploy(p, {1.0, 3.0, hc}, o);
    EXPECT_NEAR(r.line_angle, pi, 1e-12);
}

TEST(FreeForm, TwoElementsOverSingleHotspot)
{
    const auto p = problem({{{2.0, 2.0, 1.0}, 1.0}}, 2);
    const auto init = initial_loop({2.1, 1.95, hc}, 2, kappa);
    const auto sgp = sgp_deploy(p, init);
    const auto sca = sca_deploy(p, init);
    ASSERT_TRUE(sgp.success);
    ASSERT_TRUE(sca.success);
    // coarse grid over the first element and the pair direction
    const Point3 c{2.0, 2.0, 1.0};
    double opt = 0.0;
    for (double x = 1.9; x <= 2.1; x += 0.0025)
        for (double y = 1.9; y <= 2.1; y += 0.0025)
            for (int a = 0; a < 18; ++a)
            {
                const double phi = a * pi / 18.0;
                const std::vector<Point3> g{{x, y, hc}, {x + kappa * std::cos(phi), y + kappa * std::sin(phi), hc}};
                opt = std::max(opt, normalized_gain(g, c, 2.0, hc));
            }
    EXPECT_GT(sgp.objective, 0.95 * opt);
    EXPECT_GT(sca.objective, 0.95 * opt);
    EXPECT_NEAR(sgp.objective, sca.objective, 0.05 * sgp.objective);
    for (const auto *r : {&sgp, &sca})
        for (std::size_t k = 1; k < r->history.size(); ++k)
            EXPECT_GE(r->history[k], r->history[k - 1] * (1.0 - 1e-9));
}

TEST(FreeForm, SmallInstancesMapFeasible)
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(1.0, 3.0);
    for (int k = 0; k < 3; ++k)
    {
        std::vector<Hotspot> hs;
        for (int i = 0; i < 3; ++i)
            hs.push_back({{u(rng), u(rng), 1.0}, 1.0});
        const auto p = problem(hs, 8);
        const Point3 head{2.0, 2.0, hc};
        for (const std::string m : {"sgp", "sca"})
        {
            const auto r = deploy::deploy(m, p, head);
            EXPECT_TRUE(r.success) << m << ": " << r.message;
            EXPECT_TRUE(feasible(r.layout));
            EXPECT_GT(r.objective, 0.75 * r.pre_mapping_objective) << m;
            EXPECT_EQ(r.powers.size(), 3u);
            double sum = 0.0;
            for (double P : r.powers)
                sum += P;
            EXPECT_LE(sum, p.budget * (1.0 + 1e-9));
        }
    }
}

TEST(Dispatch, NamesAndErrors)
{
    const auto names = method_names();
    EXPECT_EQ(names.size(), 6u);
    EXPECT_TRUE(is_optimized_method("sgp"));
    EXPECT_FALSE(is_optimized_method("center_upa"));
    const auto p = problem({{{2.0, 2.0, 1.0}, 1.0}}, 9);
    EXPECT_THROW(deploy::deploy("spiral", p, {2, 2, hc}), std::exception);
    const auto b = deploy::deploy("center_rectangle", p, {2, 2, hc});
    EXPECT_EQ(b.iterations, 0);
    EXPECT_NEAR(b.powers[0], 1.0, 1e-12);
    auto bad = p;
    bad.N = 1;
    EXPECT_THROW(bad.validate(), DeploymentError);
}

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

#include "stripeplan/clustering.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace stripeplan;
using namespace stripeplan::cluster;

namespace
{

constexpr double hc = 5.0;

std::vector<Hotspot> random_hotspots(int K, std::uint64_t seed, double side = 25.0)
{
    return generate_hotspots(side, side, hc, K, {0.8, 1.2}, seed);
}

// Best binary assignment by enumeration, heads optimized per assignment
double brute_force_binary(const std::vector<Hotspot> &hs, int U, Eigen::MatrixXd &best_v)
{
    const int K = static_cast<int>(hs.size());
    double best = std::numeric_limits<double>::infinity();
    int total = 1;
    for (int i = 0; i < K; ++i)
        total *= U;
    for (int code = 0; code < total; ++code)
    {
        Eigen::MatrixXd v = Eigen::MatrixXd::Zero(K, U);
        std::vector<int> count(static_cast<std::size_t>(U), 0);
        int c = code;
        for (int i = 0; i < K; ++i)
        {
            v(i, c % U) = 1.0;
            ++count[static_cast<std::size_t>(c % U)];
            c /= U;
        }
        bool empty = false;
        for (int n : count)
            empty = empty || n == 0;
        if (empty)
            continue;
        const double t = optimize_heads(v, hs, 2.0, hc).objective;
        if (t < best)
        {
            best = t;
            best_v = v;
        }
    }
    return best;
}

} // namespace

TEST(Loss, HandValues)
{
    // head straight above: |s - c| = e, so the loss is eta e^2 for b = 2
    const Hotspot h{{0, 0, 1}, 1.0};
    EXPECT_NEAR(loss_metric({0, 0, hc}, h, 2.0, hc), 16.0, 1e-12);
    const Hotspot heavy{{0, 0, 1}, 2.0};
    EXPECT_NEAR(loss_metric({1, 2, hc}, heavy, 2.0, hc), 2.0 * loss_metric({1, 2, hc}, h, 2.0, hc), 1e-12);
    EXPECT_THROW(loss_metric({0, 0, hc}, Hotspot{{0, 0, 6}, 1.0}, 2.0, hc), ClusterError);
}

TEST(Loss, GeneralFormula)
{
    const Hotspot h{{1.0, 2.0, 1.0}, 1.5};
    const Point3 s{3.0, -1.0, hc};
    const double e = hc - 1.0;
    const double d = distance(s, h.center);
    EXPECT_NEAR(loss_metric(s, h, 3.0, hc), 1.5 * std::pow(d, 5.0) / std::pow(e, 3.0), 1e-12);
}

TEST(Heads, SingleHotspotAbove)
{
    const std::vector<Hotspot> hs{{{4.0, 7.0, 1.0}, 1.0}};
    const auto r = optimize_heads(Eigen::MatrixXd::Ones(1, 1), hs, 2.0, hc);
    EXPECT_NEAR(r.heads[0].x, 4.0, 1e-5);
    EXPECT_NEAR(r.heads[0].y, 7.0, 1e-5);
    EXPECT_EQ(r.heads[0].z, hc);
    EXPECT_NEAR(r.objective, 16.0, 1e-6);
}

TEST(Heads, TwoSymmetricHotspotsOnBisector)
{
    const std::vector<Hotspot> hs{{{0.0, 0.0, 1.0}, 1.0}, {{4.0, 2.0, 1.0}, 1.0}};
    const auto r = optimize_heads(Eigen::MatrixXd::Ones(2, 1), hs, 2.0, hc);
    EXPECT_NEAR(distance(r.heads[0], hs[0].center), distance(r.heads[0], hs[1].center), 1e-5);
    EXPECT_NEAR(r.heads[0].x, 2.0, 1e-5);
    EXPECT_NEAR(r.heads[0].y, 1.0, 1e-5);
}

TEST(Heads, TriangleCircumcenter)
{
    const double s3 = std::sqrt(3.0);
    const std::vector<Hotspot> hs{{{0, 0, 1}, 1.0}, {{1, 0, 1}, 1.0}, {{0.5, s3 / 2, 1}, 1.0}};
    const auto r = optimize_heads(Eigen::MatrixXd::Ones(3, 1), hs, 2.0, hc);
    EXPECT_NEAR(r.heads[0].x, 0.5, 1e-5);
    EXPECT_NEAR(r.heads[0].y, s3 / 6.0, 1e-5);
}

TEST(Heads, MatchesGridSearch)
{
    const auto hs = random_hotspots(4, 17, 6.0);
    const auto r = optimize_heads(Eigen::MatrixXd::Ones(4, 1), hs, 2.0, hc);
    double best = std::numeric_limits<double>::infinity();
    for (double x = 0.0; x <= 6.0; x += 0.01)
        for (double y = 0.0; y <= 6.0; y += 0.01)
        {
            double worst = 0.0;
            for (const auto &h : hs)
                worst = std::max(worst, loss_metric({x, y, hc}, h, 2.0, hc));
            best = std::min(best, worst);
        }
    EXPECT_LE(r.objective, best * (1.0 + 1e-9));
    EXPECT_GT(r.objective, best * (1.0 - 1e-2));
}

TEST(Assign, OneHotspotTwoHeadsLpSplit)
{
    const std::vector<Hotspot> hs{{{0, 0, 1}, 1.0}};
    const std::vector<Point3> heads{{0, 0, hc}, {2, 0, hc}};
    const double D1 = loss_metric(heads[0], hs[0], 2.0, hc), D2 = loss_metric(heads[1], hs[0], 2.0, hc);
    ASSERT_LT(D1, D2);
    const auto r = relax_assign(heads, hs, 2.0, hc);
    // the LP splits weight so both products are equal: t = D1 D2 / (D1 + D2)
    EXPECT_NEAR(r.objective, D1 * D2 / (D1 + D2), 1e-9 * D1);
    EXPECT_LT(r.objective, D1);
    const auto p = project_assignment(r.v);
    EXPECT_EQ(p(0, 0), 1.0);
    EXPECT_EQ(p(0, 1), 0.0);
}

TEST(Assign, TieAndSingleStripe)
{
    const std::vector<Hotspot> hs{{{1, 0, 1}, 1.0}, {{3, 2, 1}, 1.0}};
    const std::vector<Point3> tie{{0, 0, hc}, {2, 0, hc}};
    const auto r = relax_assign(tie, hs, 2.0, hc);
    const double D = loss_metric(tie[0], hs[0], 2.0, hc);
    EXPECT_LE(r.objective, std::max(D, loss_metric(tie[1], hs[1], 2.0, hc)) + 1e-9);

    const std::vector<Point3> one{{1, 1, hc}};
    const auto s = relax_assign(one, hs, 2.0, hc);
    EXPECT_EQ(s.v.rows(), 2);
    EXPECT_NEAR(s.v(0, 0), 1.0, 1e-12);
    EXPECT_NEAR(s.v(1, 0), 1.0, 1e-12);
    EXPECT_NEAR(s.objective, std::max(loss_metric(one[0], hs[0], 2.0, hc), loss_metric(one[0], hs[1], 2.0, hc)),
                1e-9);
}

TEST(Assign, Projection)
{
    Eigen::MatrixXd v(3, 2);
    v << 0.2, 0.8, 0.5, 0.5, 1.0, 0.0;
    const auto p = project_assignment(v);
    EXPECT_EQ(p(0, 1), 1.0);
    EXPECT_EQ(p(1, 0), 1.0);
    EXPECT_EQ(p(2, 0), 1.0);
    EXPECT_EQ(project_assignment(p), p);
}

TEST(Assign, RelaxationBelowBruteForce)
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
    {
        const auto hs = random_hotspots(6, seed);
        Eigen::MatrixXd v;
        const double binary = brute_force_binary(hs, 2, v);
        const auto heads = optimize_heads(v, hs, 2.0, hc).heads;
        EXPECT_LE(relax_assign(heads, hs, 2.0, hc).objective, binary + 1e-9);
    }
}

TEST(FacAo, MonotoneAndNotWorseThanInit)
{
    for (std::uint64_t seed = 1; seed <= 4; ++seed)
    {
        const auto hs = random_hotspots(25, seed);
        const auto init = chebyshev_cluster(hs, 4, 2.0, hc, seed);
        const auto sol = fac_ao(hs, 4, init, 2.0, hc);
        ASSERT_FALSE(sol.relaxed_history.empty());
        for (std::size_t k = 1; k < sol.relaxed_history.size(); ++k)
            EXPECT_LE(sol.relaxed_history[k], sol.relaxed_history[k - 1] + 1e-9);
        EXPECT_EQ(sol.num_clusters(), 4);
        for (Eigen::Index i = 0; i < sol.assignment.rows(); ++i)
            EXPECT_DOUBLE_EQ(sol.assignment.row(i).sum(), 1.0);
        EXPECT_NEAR(sol.objective, assignment_objective(sol.assignment, sol.heads, hs, 2.0, hc), 1e-12);
    }
}

TEST(FacAo, SingleStripeIsOneHeadSolve)
{
    const auto hs = random_hotspots(7, 3);
    const auto init = chebyshev_cluster(hs, 1, 2.0, hc, 1);
    const auto sol = fac_ao(hs, 1, init, 2.0, hc);
    const auto direct = optimize_heads(Eigen::MatrixXd::Ones(7, 1), hs, 2.0, hc);
    EXPECT_NEAR(sol.objective, direct.objective, 1e-6 * direct.objective);
}

TEST(FacAo, RejectsBadInit)
{
    const auto hs = random_hotspots(5, 2);
    ClusterSolution bad;
    bad.assignment = Eigen::MatrixXd::Zero(5, 2);
    EXPECT_THROW(fac_ao(hs, 2, bad, 2.0, hc), ClusterError);
    EXPECT_THROW(chebyshev_cluster(hs, 6, 2.0, hc, 1), ClusterError);
}

TEST(Chebyshev, Distance)
{
    EXPECT_EQ(chebyshev_distance({0, 0, 0}, {3, 4, 9}), 4.0);
}

TEST(Chebyshev, CornersGiveCenter)
{
    const std::vector<Hotspot> hs{{{0, 0, 1}, 1.0}, {{2, 0, 1}, 1.0}, {{0, 2, 1}, 1.0}, {{2, 2, 1}, 1.0}};
    const auto sol = chebyshev_cluster(hs, 1, 2.0, hc, 1);
    ASSERT_EQ(sol.heads.size(), 1u);
    EXPECT_NEAR(sol.heads[0].x, 1.0, 1e-9);
    EXPECT_NEAR(sol.heads[0].y, 1.0, 1e-9);
}

TEST(Chebyshev, OneHotspotPerStripe)
{
    const auto hs = random_hotspots(5, 9);
    const auto sol = chebyshev_cluster(hs, 5, 2.0, hc, 4);
    const auto labels = sol.labels();
    std::vector<int> seen(5, 0);
    for (int l : labels)
        ++seen[static_cast<std::size_t>(l)];
    for (int n : seen)
        EXPECT_EQ(n, 1);
    for (std::size_t i = 0; i < hs.size(); ++i)
    {
        EXPECT_NEAR(sol.heads[static_cast<std::size_t>(labels[i])].x, hs[i].center.x, 1e-6);
        EXPECT_NEAR(sol.heads[static_cast<std::size_t>(labels[i])].y, hs[i].center.y, 1e-6);
    }
}

TEST(Random, EveryStripeNonEmpty)
{
    const auto hs = random_hotspots(9, 1);
    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        const auto sol = random_assignment(hs, 4, 2.0, hc, seed);
        for (Eigen::Index u = 0; u < 4; ++u)
            EXPECT_GE(sol.assignment.col(u).sum(), 1.0);
    }
}

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

#include "stripeplan/beamforming.hpp"
#include "stripeplan/deployment/layouts.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

using namespace stripeplan;
using namespace stripeplan::beam;

namespace
{

Eigen::VectorXcd random_channel(int n, std::mt19937_64 &rng, double scale = 1.0)
{
    std::normal_distribution<double> g(0.0, scale);
    Eigen::VectorXcd h(n);
    for (int k = 0; k < n; ++k)
        h(k) = {g(rng), g(rng)};
    return h;
}

Eigen::VectorXcd unit(int n, int k)
{
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
    e(k) = 1.0;
    return e;
}

} // namespace

TEST(Powers, TwoEqualHotspotsSplitEvenly)
{
    const std::vector<double> G{2.0, 2.0}, eta{1.0, 1.0};
    for (const auto &a : {allocate_powers_lp(G, eta, 1.0), allocate_powers_closed_form(G, eta, 1.0)})
    {
        EXPECT_NEAR(a.powers[0], 0.5, 1e-7);
        EXPECT_NEAR(a.powers[1], 0.5, 1e-7);
        EXPECT_NEAR(a.objective, 1.0, 1e-7);
    }
}

TEST(Powers, UnequalGains)
{
    // P proportional to 1/G: (1/1, 1/1, 1/2) normalized
    const std::vector<double> G{1.0, 1.0, 2.0}, eta{1.0, 1.0, 1.0};
    const auto lp = allocate_powers_lp(G, eta, 1.0);
    const auto cf = allocate_powers_closed_form(G, eta, 1.0);
    const std::vector<double> expected{0.4, 0.4, 0.2};
    for (std::size_t i = 0; i < 3; ++i)
    {
        EXPECT_NEAR(lp.powers[i], expected[i], 1e-7);
        EXPECT_NEAR(cf.powers[i], expected[i], 1e-12);
    }
    EXPECT_NEAR(lp.objective, 0.4, 1e-7);
    EXPECT_NEAR(cf.objective, 0.4, 1e-12);
}

TEST(Powers, RandomLpMatchesClosedForm)
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    for (int k = 0; k < 50; ++k)
    {
        std::vector<double> G(5), eta(5);
        for (int i = 0; i < 5; ++i)
        {
            G[static_cast<std::size_t>(i)] = u(rng);
            eta[static_cast<std::size_t>(i)] = u(rng);
        }
        const auto lp = allocate_powers_lp(G, eta, 2.0);
        const auto cf = allocate_powers_closed_form(G, eta, 2.0);
        EXPECT_NEAR(lp.objective, cf.objective, 1e-7 * cf.objective);
        double sum = 0.0;
        for (double p : lp.powers)
            sum += p;
        EXPECT_LE(sum, 2.0 + 1e-7);
    }
}

TEST(Powers, Errors)
{
    const std::vector<double> G{1.0, 0.0}, eta{1.0, 1.0}, one{1.0};
    EXPECT_THROW(allocate_powers_closed_form(G, eta, 1.0), BeamError);
    EXPECT_THROW(allocate_powers_closed_form(one, eta, 1.0), BeamError);
    EXPECT_THROW(allocate_powers_closed_form(one, one, 0.0), BeamError);
    EXPECT_THROW(allocate_powers_lp(std::vector<double>{}, std::vector<double>{}, 1.0), BeamError);
}

TEST(Mrt, BeamPowersAndAlignment)
{
    std::mt19937_64 rng(1);
    const std::vector<Eigen::VectorXcd> h{random_channel(6, rng), random_channel(6, rng)};
    const std::vector<double> P{0.3, 0.7};
    const auto set = mrt_precoders(h, P);
    ASSERT_EQ(set.beams.size(), 2u);
    EXPECT_NEAR(set.total_power(), 1.0, 1e-12);
    for (std::size_t m = 0; m < 2; ++m)
    {
        EXPECT_NEAR(set.beams[m].squaredNorm(), P[m], 1e-12);
        // Cauchy-Schwarz is tight along h
        EXPECT_NEAR(std::norm(h[m].dot(set.beams[m])), P[m] * h[m].squaredNorm(), 1e-12);
    }
    EXPECT_THROW(mrt_precoders(h, std::vector<double>{1.0}), BeamError);
    EXPECT_THROW(mrt_precoders(std::vector<Eigen::VectorXcd>{Eigen::VectorXcd::Zero(3)}, std::vector<double>{1.0}),
                 BeamError);
    EXPECT_THROW(mrt_precoders(h, std::vector<double>{0.5, -0.1}), BeamError);
}

TEST(Mrt, CauchySchwarzBound)
{
    std::mt19937_64 rng(2);
    for (int k = 0; k < 100; ++k)
    {
        const auto h = random_channel(8, rng);
        const auto w = random_channel(8, rng);
        const double p = w.squaredNorm();
        const auto mrt = mrt_precoders(std::vector<Eigen::VectorXcd>{h}, std::vector<double>{p});
        EXPECT_LE(std::norm(h.dot(w)), std::norm(h.dot(mrt.beams[0])) * (1.0 + 1e-12));
    }
}

TEST(Mrt, OrthogonalChannelsHaveNoCrossTerms)
{
    const std::vector<Eigen::VectorXcd> h{unit(4, 0) * 2.0, unit(4, 2) * 3.0};
    const auto set = mrt_precoders(h, std::vector<double>{0.5, 0.5});
    EXPECT_NEAR(std::abs(h[0].dot(set.beams[1])), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(h[1].dot(set.beams[0])), 0.0, 1e-15);
}

TEST(Received, MatchesBruteForce)
{
    const RfParams rf{0.03, 2.0, 5.0};
    const auto L1 = deploy::line_layout({2, 2, 5}, 6, 0.015, 0.4);
    const auto L2 = deploy::polygon_layout({4, 3, 5}, 8, 0.015);
    const Point3 a{2.1, 2.2, 1.0}, b{3.9, 3.0, 1.1};
    std::vector<StripeTx> tx;
    tx.push_back({L1, mrt_precoders(std::vector<Eigen::VectorXcd>{channel_vector(L1, a, rf)},
                                    std::vector<double>{0.5})});
    tx.push_back({L2, mrt_precoders(std::vector<Eigen::VectorXcd>{channel_vector(L2, a, rf), channel_vector(L2, b, rf)},
                                    std::vector<double>{0.2, 0.3})});
    const Point3 p{2.5, 2.5, 1.0};
    double expected = 0.0;
    for (const auto &s : tx)
    {
        const auto h = channel_vector(s.layout, p, rf);
        for (const auto &w : s.precoders.beams)
        {
            std::complex<double> acc = 0.0;
            for (Eigen::Index k = 0; k < h.size(); ++k)
                acc += std::conj(h(k)) * w(k);
            expected += std::norm(acc);
        }
    }
    EXPECT_NEAR(received_power(p, tx, rf), expected, 1e-12 * expected);
    EXPECT_THROW(received_power({2, 2, 5.5}, tx, rf), BeamError);
}

TEST(Received, LowerBoundBelowExact)
{
    const RfParams rf{0.03, 2.0, 5.0};
    const auto L1 = deploy::polygon_layout({2, 2, 5}, 10, 0.015);
    const auto L2 = deploy::polygon_layout({5, 5, 5}, 10, 0.015);
    const std::vector<Point3> c{{2, 2.2, 1.0}, {1.8, 2.0, 1.0}, {5, 5.1, 1.0}};
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(3, 2);
    v(0, 0) = v(1, 0) = v(2, 1) = 1.0;
    std::vector<StripeTx> tx;
    tx.push_back({L1, mrt_precoders(std::vector<Eigen::VectorXcd>{channel_vector(L1, c[0], rf),
                                                                   channel_vector(L1, c[1], rf)},
                                    std::vector<double>{0.25, 0.25})});
    tx.push_back({L2, mrt_precoders(std::vector<Eigen::VectorXcd>{channel_vector(L2, c[2], rf)},
                                    std::vector<double>{0.5})});
    const std::vector<std::vector<int>> beam_of{{0, 1, -1}, {-1, -1, 0}};
    for (int i = 0; i < 3; ++i)
    {
        const auto ui = static_cast<std::size_t>(i);
        const double lb = received_power_lower_bound(i, c[ui], v, tx, beam_of, rf);
        EXPECT_LE(lb, received_power(c[ui], tx, rf) * (1.0 + 1e-12));
        const int u = i < 2 ? 0 : 1;
        const double dedicated =
            tx[static_cast<std::size_t>(u)].precoders.beams[static_cast<std::size_t>(beam_of[static_cast<std::size_t>(u)][ui])]
                .squaredNorm() *
            channel_vector(tx[static_cast<std::size_t>(u)].layout, c[ui], rf).squaredNorm();
        EXPECT_NEAR(lb, dedicated, 1e-12 * dedicated);
    }
}

TEST(Sdp, SingleChannelEqualsMrt)
{
    std::mt19937_64 rng(6);
    const std::vector<Eigen::VectorXcd> h{random_channel(5, rng)};
    const std::vector<double> eta{1.0};
    const auto r = sdp_precoders(h, eta, 1.0);
    EXPECT_NEAR(r.sdp_value, h[0].squaredNorm(), 1e-6 * h[0].squaredNorm());
    EXPECT_NEAR(r.delivered_value, h[0].squaredNorm(), 1e-6 * h[0].squaredNorm());
    EXPECT_EQ(r.rank, 1);
    EXPECT_LE(r.precoders.total_power(), 1.0 + 1e-9);
}

TEST(Sdp, OrthogonalChannelsSplitBudget)
{
    const std::vector<Eigen::VectorXcd> h{unit(4, 0) * 2.0, unit(4, 1) * 2.0};
    const std::vector<double> eta{1.0, 1.0};
    const auto r = sdp_precoders(h, eta, 1.0);
    // budget * ||h||^2 / 2
    EXPECT_NEAR(r.sdp_value, 2.0, 1e-6);
    EXPECT_NEAR(r.delivered_value, 2.0, 1e-5);
}

TEST(Sdp, NotWorseThanMrtWithOptimalPowers)
{
    std::mt19937_64 rng(8);
    for (int k = 0; k < 10; ++k)
    {
        std::vector<Eigen::VectorXcd> h;
        std::vector<double> G, eta{1.0, 1.5, 0.8};
        for (int i = 0; i < 3; ++i)
        {
            h.push_back(random_channel(6, rng));
            G.push_back(h.back().squaredNorm());
        }
        const auto pa = allocate_powers_closed_form(G, eta, 1.0);
        const auto mrt = mrt_precoders(h, pa.powers);
        const double mrt_value = delivered_min_power(mrt, h, eta);
        const auto sdp = sdp_precoders(h, eta, 1.0);
        EXPECT_GE(sdp.sdp_value, mrt_value * (1.0 - 1e-6));
        EXPECT_LE(sdp.delivered_value, sdp.sdp_value * (1.0 + 1e-6));
        EXPECT_NEAR(sdp.delivered_value, delivered_min_power(sdp.precoders, h, eta), 1e-9 * sdp.sdp_value);
        EXPECT_LE(sdp.precoders.total_power(), 1.0 + 1e-6);
    }
}

TEST(Sdp, Errors)
{
    const std::vector<Eigen::VectorXcd> h{unit(3, 0)};
    EXPECT_THROW(sdp_precoders(h, std::vector<double>{1.0}, 0.0), BeamError);
    EXPECT_THROW(sdp_precoders(h, std::vector<double>{1.0, 2.0}, 1.0), BeamError);
}

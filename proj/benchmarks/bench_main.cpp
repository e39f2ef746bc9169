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
#include "stripeplan/channel.hpp"
#include "stripeplan/clustering.hpp"
#include "stripeplan/deployment/deploy.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace stripeplan;

namespace
{

std::vector<Hotspot> cluster_of(int K, std::uint64_t seed)
{
    auto hs = generate_hotspots(4.0, 4.0, 5.0, K, {}, seed);
    for (auto &h : hs)
    {
        h.center.x += 10.0;
        h.center.y += 10.0;
    }
    return hs;
}

deploy::DeploymentProblem problem(int N)
{
    deploy::DeploymentProblem p;
    p.hotspots = cluster_of(5, 3);
    p.N = N;
    p.kappa = 0.015;
    p.ceiling_h = 5.0;
    return p;
}

} // namespace

static void BM_ChannelGain(benchmark::State &state)
{
    const auto L = deploy::polygon_layout({12, 12, 5}, static_cast<int>(state.range(0)), 0.015);
    const Point3 c{11.0, 12.5, 1.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(channel_gain_sq(L, c, 2.0, 5.0, 0.03));
}
BENCHMARK(BM_ChannelGain)->Arg(24)->Arg(101)->Arg(200);

static void BM_FacAo(benchmark::State &state)
{
    const auto hs = generate_hotspots(25.0, 25.0, 5.0, 25, {}, 1);
    const int U = static_cast<int>(state.range(0));
    for (auto _ : state)
    {
        const auto init = cluster::chebyshev_cluster(hs, U, 2.0, 5.0, 2);
        benchmark::DoNotOptimize(cluster::fac_ao(hs, U, init, 2.0, 5.0).objective);
    }
}
BENCHMARK(BM_FacAo)->Arg(2)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_Mapping(benchmark::State &state)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-0.004, 0.004);
    std::vector<Point3> raw;
    for (int j = 0; j < 20; ++j)
        raw.push_back({1.0 + u(rng), 1.0 + u(rng), 5.0});
    for (auto _ : state)
        benchmark::DoNotOptimize(deploy::map_to_feasible(raw, 0.015).sweeps);
}
BENCHMARK(BM_Mapping);

static void BM_PolygonDeploy(benchmark::State &state)
{
    const auto p = problem(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(deploy::polygon_deploy(p, {12, 12, 5}).objective);
}
BENCHMARK(BM_PolygonDeploy)->Arg(24)->Arg(101)->Unit(benchmark::kMillisecond);

static void BM_SgpDeploy(benchmark::State &state)
{
    const auto p = problem(24);
    const auto init = deploy::initial_loop({12, 12, 5}, 24, 0.015);
    for (auto _ : state)
        benchmark::DoNotOptimize(deploy::sgp_deploy(p, init).objective);
}
BENCHMARK(BM_SgpDeploy)->Unit(benchmark::kMillisecond)->Iterations(3);

static void BM_SdpPrecoders(benchmark::State &state)
{
    const auto L = deploy::polygon_layout({12, 12, 5}, 24, 0.015);
    const RfParams rf{0.03, 2.0, 5.0};
    std::vector<Eigen::VectorXcd> h;
    std::vector<double> eta;
    for (const auto &hs : cluster_of(static_cast<int>(state.range(0)), 4))
    {
        h.push_back(channel_vector(L, hs.center, rf));
        eta.push_back(hs.density);
    }
    for (auto _ : state)
        benchmark::DoNotOptimize(beam::sdp_precoders(h, eta, 1.0).delivered_value);
}
BENCHMARK(BM_SdpPrecoders)->Arg(2)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

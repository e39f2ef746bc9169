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

#include "stripeplan/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

namespace stripeplan::eval
{

PrecoderKind parse_precoder(const std::string &name)
{
    if (name == "mrt")
        return PrecoderKind::mrt;
    if (name == "sdp")
        return PrecoderKind::sdp;
    throw EvalError("unknown precoder '" + name + "' (expected mrt or sdp)");
}

std::string to_string(PrecoderKind kind)
{
    return kind == PrecoderKind::mrt ? "mrt" : "sdp";
}

void EvalSetup::validate() const
{
    if (hotspots.empty())
        throw EvalError("evaluation needs at least one hotspot");
    if (labels.size() != hotspots.size())
        throw EvalError("one stripe label per hotspot required");
    if (budgets.size() != stripes.size())
        throw EvalError("one power budget per stripe required");
    for (int u : labels)
        if (u < 0 || u >= static_cast<int>(stripes.size()))
            throw EvalError("hotspot label refers to a missing stripe");
    for (const auto &s : stripes)
        if (s.elements.empty())
            throw EvalError("deployed stripe has no elements");
}

double EvalResult::mean() const
{
    if (samples.empty())
        return 0.0;
    return std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
}

std::vector<Point3> draw_users(const EvalSetup &setup, const EvalOptions &options, int draw)
{
    if (!(options.radius >= 0.0) || !(options.perturbation >= 0.0))
        throw EvalError("radius and perturbation must be nonnegative");
    const std::uint64_t base = mix_seed(options.seed, static_cast<std::uint64_t>(draw));
    std::vector<Point3> users;
    users.reserve(setup.hotspots.size());
    for (std::size_t i = 0; i < setup.hotspots.size(); ++i)
    {
        Hotspot h = setup.hotspots[i];
        if (options.perturbation > 0.0)
        {
            std::mt19937_64 rng(mix_seed(base, 2 * i + 1));
            std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
            Point3 c = h.center;
            for (int attempt = 0; attempt < 1000; ++attempt)
            {
                const double a = angle(rng);
                c = {h.center.x + options.perturbation * std::cos(a), h.center.y + options.perturbation * std::sin(a),
                     h.center.z};
                if (!setup.area || setup.area->contains(c))
                    break;
            }
            if (setup.area && !setup.area->contains(c))
                c = h.center;
            h.center = c;
        }
        users.push_back(sample_users(h, options.radius, 1, mix_seed(base, 2 * i), setup.area).front());
    }
    return users;
}

std::vector<beam::StripeTx> build_transmitters(const EvalSetup &setup, PrecoderKind kind,
                                               const std::vector<Point3> &users, const beam::SdpOptions &sdp)
{
    std::vector<beam::StripeTx> tx(setup.stripes.size());
    for (std::size_t u = 0; u < setup.stripes.size(); ++u)
    {
        tx[u].layout = setup.stripes[u];
        std::vector<Eigen::VectorXcd> channels;
        std::vector<double> etas, gains;
        for (std::size_t i = 0; i < setup.hotspots.size(); ++i)
        {
            if (setup.labels[i] != static_cast<int>(u))
                continue;
            channels.push_back(channel_vector(setup.stripes[u], users[i], setup.rf));
            gains.push_back(channels.back().squaredNorm());
            etas.push_back(setup.hotspots[i].density);
        }
        if (channels.empty())
            continue;
        if (kind == PrecoderKind::mrt)
        {
            const auto alloc = beam::allocate_powers_lp(gains, etas, setup.budgets[u]);
            tx[u].precoders = beam::mrt_precoders(channels, alloc.powers);
        }
        else
        {
            beam::SdpOptions o = sdp;
            o.seed = mix_seed(sdp.seed, u);
            tx[u].precoders = beam::sdp_precoders(channels, etas, setup.budgets[u], o).precoders;
        }
    }
    return tx;
}

DrawResult evaluate_draw(const EvalSetup &setup, PrecoderKind kind, const EvalOptions &options, int draw)
{
    DrawResult r;
    r.users = draw_users(setup, options, draw);
    beam::SdpOptions sdp = options.sdp;
    // streams 2i and 2i + 1 of the draw seed belong to hotspot i
    sdp.seed = mix_seed(mix_seed(options.seed, static_cast<std::uint64_t>(draw)), 2 * setup.hotspots.size());
    const auto tx = build_transmitters(setup, kind, r.users, sdp);
    r.min_power = std::numeric_limits<double>::infinity();
    for (const auto &user : r.users)
    {
        const double p = beam::received_power(user, tx, setup.rf);
        r.powers.push_back(p);
        r.min_power = std::min(r.min_power, p);
    }
    return r;
}

EvalResult evaluate_min_power(const EvalSetup &setup, PrecoderKind kind, const EvalOptions &options)
{
    setup.validate();
    if (options.draws < 1)
        throw EvalError("draws must be at least 1");
    EvalResult result;
    result.precoder = kind;
    result.seed = options.seed;
    result.samples.assign(static_cast<std::size_t>(options.draws), 0.0);

    const int workers = std::clamp(options.workers, 1, options.draws);
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto work = [&] {
        for (int d = next++; d < options.draws; d = next++)
        {
            try
            {
                result.samples[static_cast<std::size_t>(d)] = evaluate_draw(setup, kind, options, d).min_power;
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(failure_lock);
                if (!failure)
                    failure = std::current_exception();
            }
        }
    };
    if (workers == 1)
        work();
    else
    {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(work);
        for (auto &t : pool)
            t.join();
    }
    if (failure)
        std::rethrow_exception(failure);
    return result;
}

} // namespace stripeplan::eval

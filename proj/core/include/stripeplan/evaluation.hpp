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

#include "stripeplan/beamforming.hpp"
#include "stripeplan/channel.hpp"
#include "stripeplan/scenario.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stripeplan::eval
{

class EvalError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

enum class PrecoderKind
{
    mrt,
    sdp
};

PrecoderKind parse_precoder(const std::string &name);
std::string to_string(PrecoderKind kind);

// Deployed network: one stripe per cluster, labels[i] is the stripe serving hotspot i
struct EvalSetup
{
    std::vector<Hotspot> hotspots;
    std::vector<int> labels;
    std::vector<StripeLayout> stripes;
    std::vector<double> budgets; // watts per stripe
    RfParams rf;
    std::optional<Rect> area; // users and perturbed centers are redrawn outside it

    void validate() const;
};

struct EvalOptions
{
    int draws = 100;
    double radius = 0.5;       // user disc around each hotspot center, meters
    double perturbation = 0.0; // hotspot center offset |delta c| in a random horizontal direction, meters
    std::uint64_t seed = 1;
    beam::SdpOptions sdp;
    int workers = 1;
};

struct DrawResult
{
    double min_power = 0.0;    // watts, min over users
    std::vector<Point3> users; // one per hotspot
    std::vector<double> powers;
};

struct EvalResult
{
    PrecoderKind precoder = PrecoderKind::mrt;
    std::uint64_t seed = 0;
    std::vector<double> samples; // per-draw min received power, watts

    double mean() const;
};

// User positions of one draw (perturbation applied first)
std::vector<Point3> draw_users(const EvalSetup &setup, const EvalOptions &options, int draw);

// Precoders per stripe for the given user positions
std::vector<beam::StripeTx> build_transmitters(const EvalSetup &setup, PrecoderKind kind,
                                               const std::vector<Point3> &users, const beam::SdpOptions &sdp);

DrawResult evaluate_draw(const EvalSetup &setup, PrecoderKind kind, const EvalOptions &options, int draw);

// Draws run on up to options.workers threads; the result does not depend on the worker count
EvalResult evaluate_min_power(const EvalSetup &setup, PrecoderKind kind, const EvalOptions &options);

} // namespace stripeplan::eval

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

#include "stripeplan/channel.hpp"

#include <string>
#include <vector>

namespace stripeplan::deploy
{

struct MappingOptions
{
    int angle_period = 5;           // I_s: sweeps between angular offsets
    double angle_offset = pi / 36;  // phi'
    int max_sweeps = 0;             // 0 selects 10 N
    double tolerance = 1e-9;
    int projection_iterations = 20000; // fallback after the sweeps fail; 0 disables it
};

struct MappingResult
{
    StripeLayout layout;
    int sweeps = 0;
    int projection_iterations = 0; // fallback passes used, 0 when the sweeps sufficed
    bool feasible = false;
    std::string diagnostic;
};

// Pushes pairs closer than kappa apart along their connecting line and re-spaces
// consecutive elements to exactly kappa, until both spacing rules hold. If the sweeps
// stall, falls back to symmetric pairwise projections started from the raw layout.
MappingResult map_to_feasible(const std::vector<Point3> &raw, double kappa, const MappingOptions &options = {});

} // namespace stripeplan::deploy

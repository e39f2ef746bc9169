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
#include "stripeplan/scenario.hpp"

#include <span>
#include <string>

namespace stripeplan::deploy
{

// Regular N-gon with side kappa: r0 = kappa / (2 sin(pi/N)), vertex j at angle (j-1) 2 pi / N
StripeLayout polygon_layout(const Point3 &center, int N, double kappa);
double polygon_radius(int N, double kappa);

// g_j = center - (floor(N/2) - j) kappa (cos phi, sin phi, 0), j = 1..N
StripeLayout line_layout(const Point3 &center, int N, double kappa, double varphi);

// Horizontal offset of element j (0-based) relative to the shape center
Point3 polygon_offset(int j, int N, double kappa);
Point3 line_offset(int j, int N, double kappa, double varphi);

enum class BaselineKind
{
    center_upa,
    center_rectangle
};

BaselineKind parse_baseline(const std::string &name);
std::string to_string(BaselineKind kind);

// Mean hotspot (x, y) lifted to the ceiling
Point3 hotspot_centroid(std::span<const Hotspot> hotspots, double ceiling_h);

// center_upa: round(sqrt(N))^2 elements on a square grid, snake ordered.
// center_rectangle: N elements at spacing kappa around a near-square loop.
StripeLayout baseline_layout(BaselineKind kind, std::span<const Hotspot> hotspots, int N, double kappa,
                             double ceiling_h);

// Rectangular loop of `perimeter` unit steps (sides a x b, a = floor(P/4), b = P/2 - a)
// carrying the first N lattice points, centered at `center`.
StripeLayout rectangle_loop(const Point3 &center, int N, double kappa, int perimeter);

// Open rectangle used to start the free-form methods: perimeter N+1 (odd N) or N+2
// (even N), so that the two stripe ends sit at least 2 kappa apart.
StripeLayout initial_loop(const Point3 &center, int N, double kappa);

} // namespace stripeplan::deploy

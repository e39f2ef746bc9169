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

#include "stripeplan/deployment/layouts.hpp"

#include <cmath>
#include <stdexcept>

namespace stripeplan::deploy
{

double polygon_radius(int N, double kappa)
{
    return kappa / (2.0 * std::sin(pi / N));
}

Point3 polygon_offset(int j, int N, double kappa)
{
    const double r0 = polygon_radius(N, kappa);
    const double a = j * 2.0 * pi / N;
    return {r0 * std::cos(a), r0 * std::sin(a), 0.0};
}

StripeLayout polygon_layout(const Point3 &center, int N, double kappa)
{
    if (N < 3)
        throw std::invalid_argument("polygon_layout: need at least 3 elements");
    if (!(kappa > 0.0))
        throw std::invalid_argument("polygon_layout: kappa must be positive");
    StripeLayout s;
    s.kappa = kappa;
    for (int j = 0; j < N; ++j)
        s.elements.push_back(center + polygon_offset(j, N, kappa));
    return s;
}

Point3 line_offset(int j, int N, double kappa, double varphi)
{
    const double k = static_cast<double>(N / 2 - (j + 1)) * kappa;
    return {-k * std::cos(varphi), -k * std::sin(varphi), 0.0};
}

StripeLayout line_layout(const Point3 &center, int N, double kappa, double varphi)
{
    if (N < 2)
        throw std::invalid_argument("line_layout: need at least 2 elements");
    if (!(kappa > 0.0))
        throw std::invalid_argument("line_layout: kappa must be positive");
    StripeLayout s;
    s.kappa = kappa;
    for (int j = 0; j < N; ++j)
        s.elements.push_back(center + line_offset(j, N, kappa, varphi));
    return s;
}

BaselineKind parse_baseline(const std::string &name)
{
    if (name == "center_upa")
        return BaselineKind::center_upa;
    if (name == "center_rectangle")
        return BaselineKind::center_rectangle;
    throw std::invalid_argument("unknown baseline kind '" + name + "'");
}

std::string to_string(BaselineKind kind)
{
    return kind == BaselineKind::center_upa ? "center_upa" : "center_rectangle";
}

Point3 hotspot_centroid(std::span<const Hotspot> hotspots, double ceiling_h)
{
    if (hotspots.empty())
        throw std::invalid_argument("hotspot_centroid: no hotspots");
    double x = 0.0, y = 0.0;
    for (const auto &h : hotspots)
    {
        x += h.center.x;
        y += h.center.y;
    }
    const auto n = static_cast<double>(hotspots.size());
    return {x / n, y / n, ceiling_h};
}

StripeLayout rectangle_loop(const Point3 &center, int N, double kappa, int perimeter)
{
    if (perimeter < 4 || N > perimeter || perimeter % 2 != 0)
        throw std::invalid_argument("rectangle_loop: perimeter must be even, at least 4 and hold N points");
    const int a = perimeter / 4;
    const int b = perimeter / 2 - a;
    // walk the boundary of [0,a] x [0,b] counter-clockwise from the origin
    StripeLayout s;
    s.kappa = kappa;
    const double ox = center.x - 0.5 * a * kappa;
    const double oy = center.y - 0.5 * b * kappa;
    for (int k = 0; k < N; ++k)
    {
        int x = 0, y = 0;
        if (k <= a)
            x = k;
        else if (k <= a + b)
        {
            x = a;
            y = k - a;
        }
        else if (k <= 2 * a + b)
        {
            x = 2 * a + b - k;
            y = b;
        }
        else
            y = perimeter - k;
        s.elements.push_back({ox + x * kappa, oy + y * kappa, center.z});
    }
    return s;
}

StripeLayout initial_loop(const Point3 &center, int N, double kappa)
{
    if (N < 2)
        throw std::invalid_argument("initial_loop: need at least 2 elements");
    const int P = std::max(4, N % 2 == 1 ? N + 1 : N + 2);
    return rectangle_loop(center, N, kappa, P);
}

StripeLayout baseline_layout(BaselineKind kind, std::span<const Hotspot> hotspots, int N, double kappa,
                             double ceiling_h)
{
    if (!(kappa > 0.0))
        throw std::invalid_argument("baseline_layout: kappa must be positive");
    const Point3 c = hotspot_centroid(hotspots, ceiling_h);
    if (kind == BaselineKind::center_upa)
    {
        if (N < 1)
            throw std::invalid_argument("baseline_layout: UPA needs N >= 1");
        const int s = std::max(1, static_cast<int>(std::lround(std::sqrt(static_cast<double>(N)))));
        StripeLayout out;
        out.kappa = kappa;
        const double off = 0.5 * (s - 1) * kappa;
        for (int r = 0; r < s; ++r)
            for (int q = 0; q < s; ++q)
            {
                const int col = r % 2 == 0 ? q : s - 1 - q;
                out.elements.push_back({c.x - off + col * kappa, c.y - off + r * kappa, ceiling_h});
            }
        return out;
    }
    if (N < 4)
        throw std::invalid_argument("baseline_layout: rectangle needs N >= 4");
    // closed loop when N is even; an odd N leaves one empty lattice step
    return rectangle_loop(c, N, kappa, N % 2 == 0 ? N : N + 1);
}

} // namespace stripeplan::deploy

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

#include "stripeplan/deployment/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace stripeplan::deploy
{

namespace
{

bool satisfied(const std::vector<Point3> &g, double kappa, double tol, double &cons_err, double &min_pair)
{
    cons_err = 0.0;
    min_pair = std::numeric_limits<double>::infinity();
    const std::size_t N = g.size();
    for (std::size_t j = 0; j + 1 < N; ++j)
        cons_err = std::max(cons_err, std::abs(horizontal_distance(g[j], g[j + 1]) - kappa));
    for (std::size_t j = 0; j < N; ++j)
        for (std::size_t n = j + 1; n < N; ++n)
            min_pair = std::min(min_pair, horizontal_distance(g[j], g[n]));
    return cons_err <= tol && min_pair >= kappa - tol;
}

// Gauss-Seidel projections: each consecutive pair is set to kappa and each other pair
// closer than kappa is opened to kappa, moving both ends by half the error.
bool project(std::vector<Point3> &g, double kappa, double tol, int max_iterations, int &used)
{
    const std::size_t N = g.size();
    double cons_err = 0.0, min_pair = 0.0;
    for (used = 1; used <= max_iterations; ++used)
    {
        for (std::size_t j = 0; j < N; ++j)
            for (std::size_t n = j + 1; n < N; ++n)
            {
                const double dx = g[n].x - g[j].x, dy = g[n].y - g[j].y;
                const double d = std::hypot(dx, dy);
                if (n != j + 1 && d >= kappa)
                    continue;
                double ux = 1.0, uy = 0.0;
                if (d > 0.0)
                {
                    ux = dx / d;
                    uy = dy / d;
                }
                const double half = 0.5 * (d - kappa);
                g[j].x += half * ux;
                g[j].y += half * uy;
                g[n].x -= half * ux;
                g[n].y -= half * uy;
            }
        if (satisfied(g, kappa, tol, cons_err, min_pair))
            return true;
    }
    return false;
}

} // namespace

MappingResult map_to_feasible(const std::vector<Point3> &raw, double kappa, const MappingOptions &options)
{
    const int N = static_cast<int>(raw.size());
    if (N < 2)
        throw std::invalid_argument("map_to_feasible: need at least 2 elements");
    if (!(kappa > 0.0))
        throw std::invalid_argument("map_to_feasible: kappa must be positive");
    const int cap = options.max_sweeps > 0 ? options.max_sweeps : 10 * N;
    const double tol = options.tolerance;

    MappingResult out;
    std::vector<Point3> g = raw;
    double cons_err = 0.0, min_pair = 0.0;
    if (satisfied(g, kappa, tol, cons_err, min_pair))
    {
        out.layout = {g, kappa};
        out.feasible = true;
        return out;
    }
    for (int C = 1; C <= cap; ++C)
    {
        out.sweeps = C;
        for (int j = 0; j + 1 < N; ++j)
        {
            const Point3 gj = g[static_cast<std::size_t>(j)];
            for (int n = j + 1; n < N; ++n)
            {
                Point3 &gn = g[static_cast<std::size_t>(n)];
                const double dx = gn.x - gj.x, dy = gn.y - gj.y;
                const double dist = std::hypot(dx, dy);
                if (dist >= kappa - tol)
                    continue;
                double ux = 1.0, uy = 0.0;
                if (dist > 0.0)
                {
                    ux = dx / dist;
                    uy = dy / dist;
                }
                else
                {
                    const double a = n * options.angle_offset;
                    ux = std::cos(a);
                    uy = std::sin(a);
                }
                gn.x = gj.x + ux * kappa;
                gn.y = gj.y + uy * kappa;
            }
            Point3 &next = g[static_cast<std::size_t>(j + 1)];
            double phi = std::atan2(next.y - gj.y, next.x - gj.x);
            if (C % options.angle_period == 0)
                phi += options.angle_offset;
            auto clear = [&](double x, double y) {
                for (int m = 0; m < j; ++m)
                    if (std::hypot(x - g[static_cast<std::size_t>(m)].x, y - g[static_cast<std::size_t>(m)].y) <
                        kappa - tol)
                        return false;
                return true;
            };
            if (std::abs(horizontal_distance(gj, next) - kappa) > tol || !clear(next.x, next.y))
            {
                // turn away from earlier elements in steps of phi', alternating sides
                const int steps = static_cast<int>(std::ceil(pi / options.angle_offset));
                double chosen = phi;
                for (int k = 0; k <= 2 * steps; ++k)
                {
                    const double a = phi + ((k + 1) / 2) * (k % 2 == 1 ? 1.0 : -1.0) * options.angle_offset;
                    if (clear(gj.x + kappa * std::cos(a), gj.y + kappa * std::sin(a)))
                    {
                        chosen = a;
                        break;
                    }
                }
                next.x = gj.x + kappa * std::cos(chosen);
                next.y = gj.y + kappa * std::sin(chosen);
            }
        }
        if (satisfied(g, kappa, tol, cons_err, min_pair))
        {
            out.layout = {g, kappa};
            out.feasible = true;
            return out;
        }
    }
    if (options.projection_iterations > 0)
    {
        std::vector<Point3> q = raw;
        int used = 0;
        const bool ok = project(q, kappa, tol, options.projection_iterations, used);
        out.projection_iterations = std::min(used, options.projection_iterations);
        if (ok)
        {
            out.layout = {q, kappa};
            out.feasible = true;
            return out;
        }
        satisfied(g, kappa, tol, cons_err, min_pair);
    }
    std::ostringstream msg;
    msg << "mapping did not reach a feasible layout in " << cap << " sweeps (max consecutive error " << cons_err
        << ", min pairwise distance " << min_pair << ", kappa " << kappa << ")";
    out.layout = {g, kappa};
    out.diagnostic = msg.str();
    return out;
}

} // namespace stripeplan::deploy

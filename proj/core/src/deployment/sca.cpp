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

#include "detail.hpp"

#include "stripeplan/beamforming.hpp"
#include "stripeplan/conic/interior_point.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace stripeplan::deploy
{

namespace
{

// Location step with fixed powers: linearized gains and spacing around g0.
// Returns false when the convex solve fails.
bool sca_location_step(const DeploymentProblem &p, const std::vector<Point3> &g0, const std::vector<double> &P,
                       double sigma, double slack, std::vector<Point3> &g_out)
{
    const int N = static_cast<int>(g0.size());
    const int K = static_cast<int>(p.hotspots.size());
    const double b = p.b;
    // variable layout: t, (x_j, y_j), d_{j,i}, l_j
    const int t = 0;
    auto X = [](int j) { return 1 + 2 * j; };
    auto Y = [](int j) { return 2 + 2 * j; };
    const int d_base = 1 + 2 * N;
    auto D = [&](int j, int i) { return d_base + j * K + i; };
    const int l_base = d_base + N * K;
    auto L = [&](int j) { return l_base + j; };
    const int n = l_base + (N - 1);

    conic::ConvexProgram cp(n);
    cp.set_objective(t, -1.0);

    std::vector<std::vector<double>> d0(static_cast<std::size_t>(N), std::vector<double>(static_cast<std::size_t>(K)));
    for (int j = 0; j < N; ++j)
        for (int i = 0; i < K; ++i)
            d0[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                distance(g0[static_cast<std::size_t>(j)], p.hotspots[static_cast<std::size_t>(i)].center);

    // t <= (e^b P_i / eta_i) sum_j [d0^-(b+2) - (b+2) d0^-(b+3) (d - d0)]
    for (int i = 0; i < K; ++i)
    {
        const Hotspot &h = p.hotspots[static_cast<std::size_t>(i)];
        const double w = std::pow(h.elevation(p.ceiling_h), b) * P[static_cast<std::size_t>(i)] / h.density;
        conic::SparseRow row;
        row.add(t, 1.0);
        double rhs = 0.0;
        for (int j = 0; j < N; ++j)
        {
            const double dd = d0[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            const double slope = (b + 2.0) * std::pow(dd, -(b + 3.0));
            row.add(D(j, i), w * slope);
            rhs += w * (std::pow(dd, -(b + 2.0)) + slope * dd);
        }
        cp.add_linear(std::move(row), rhs);
    }
    // |g_j - c_i| <= d_{j,i}
    for (int j = 0; j < N; ++j)
        for (int i = 0; i < K; ++i)
        {
            const Hotspot &h = p.hotspots[static_cast<std::size_t>(i)];
            std::vector<conic::SparseRow> rows(2);
            rows[0].add(X(j), 1.0);
            rows[1].add(Y(j), 1.0);
            conic::SparseRow ez; // constant row for the vertical gap
            rows.push_back(ez);
            cp.add_cone(std::move(rows), {-h.center.x, -h.center.y, h.elevation(p.ceiling_h)},
                        conic::SparseRow{}.add(D(j, i), 1.0), 0.0);
        }
    // spacing, linearized: |g0_j - g0_n|^2 + 2 (g0_j - g0_n).(dg_j - dg_n) >= kappa^2,
    // with (1 - slack) kappa for adjacent pairs so that the length budget keeps an interior
    for (int j = 0; j < N; ++j)
        for (int m = j + 1; m < N; ++m)
        {
            const double k = m == j + 1 ? (1.0 - slack) * p.kappa : p.kappa;
            const Point3 &a = g0[static_cast<std::size_t>(j)];
            const Point3 &c = g0[static_cast<std::size_t>(m)];
            const double dx = a.x - c.x, dy = a.y - c.y;
            // -2 dx x_j - 2 dy y_j + 2 dx x_m + 2 dy y_m <= |D|^2 - k^2 - 2 D.(a - c)
            conic::SparseRow row;
            row.add(X(j), -2.0 * dx).add(Y(j), -2.0 * dy).add(X(m), 2.0 * dx).add(Y(m), 2.0 * dy);
            const double sq = dx * dx + dy * dy;
            cp.add_linear(std::move(row), sq - k * k - 2.0 * sq);
        }
    // stripe length: l_j >= |g_j - g_{j+1}|, sum l_j <= (N-1) kappa
    conic::SparseRow total;
    for (int j = 0; j + 1 < N; ++j)
    {
        std::vector<conic::SparseRow> rows(2);
        rows[0].add(X(j), 1.0).add(X(j + 1), -1.0);
        rows[1].add(Y(j), 1.0).add(Y(j + 1), -1.0);
        cp.add_cone(std::move(rows), {0.0, 0.0}, conic::SparseRow{}.add(L(j), 1.0), 0.0);
        total.add(L(j), 1.0);
    }
    cp.add_linear(std::move(total), (N - 1) * p.kappa);
    // trust ball |g_j - g0_j| <= sigma
    for (int j = 0; j < N; ++j)
    {
        std::vector<conic::SparseRow> rows(2);
        rows[0].add(X(j), 1.0);
        rows[1].add(Y(j), 1.0);
        cp.add_cone(std::move(rows), {-g0[static_cast<std::size_t>(j)].x, -g0[static_cast<std::size_t>(j)].y},
                    conic::SparseRow{}, sigma);
    }

    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < N; ++j)
    {
        x0[X(j)] = g0[static_cast<std::size_t>(j)].x;
        x0[Y(j)] = g0[static_cast<std::size_t>(j)].y;
        for (int i = 0; i < K; ++i)
            x0[D(j, i)] = d0[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] * (1.0 + 1e-6);
        if (j + 1 < N)
            x0[L(j)] = horizontal_distance(g0[static_cast<std::size_t>(j)], g0[static_cast<std::size_t>(j + 1)]);
    }
    x0[t] = 0.5 * deployment_objective(p, g0, P);

    conic::InteriorPointOptions opt;
    opt.tolerance = 1e-10;
    const auto res = conic::solve_interior_point(cp, opt, &x0);
    if (res.status != conic::SolveStatus::optimal)
        return false;
    g_out = g0;
    for (int j = 0; j < N; ++j)
    {
        g_out[static_cast<std::size_t>(j)].x = res.x[X(j)];
        g_out[static_cast<std::size_t>(j)].y = res.x[Y(j)];
    }
    return true;
}

} // namespace

DeploymentResult sca_deploy(const DeploymentProblem &p, const StripeLayout &init, const DeployOptions &options)
{
    p.validate();
    if (init.size() != p.N)
        throw DeploymentError("sca_deploy: initial layout must have N elements");
    const double sigma = detail::resolved_sigma(p, options.trust);
    const double chi = detail::resolved_chi(p, options.trust);
    std::vector<double> etas;
    for (const auto &h : p.hotspots)
        etas.push_back(h.density);

    DeploymentResult r;
    r.method = "sca";
    std::vector<Point3> g = init.elements;
    for (auto &q : g)
        q.z = p.ceiling_h;
    auto alloc = beam::allocate_powers_lp(hotspot_gains(p, g), etas, p.budget);
    std::vector<double> P = alloc.powers;
    double t = alloc.objective;
    for (int outer = 0; outer < options.max_iterations; ++outer)
    {
        // location steps with fixed powers until the elements settle
        double fixed_t = deployment_objective(p, g, P);
        for (int inner = 0; inner < options.sca_inner_max; ++inner)
        {
            std::vector<Point3> next;
            if (!sca_location_step(p, g, P, sigma, options.spacing_slack, next))
            {
                r.message = "location step solver failure; keeping the last iterate";
                break;
            }
            const double next_t = deployment_objective(p, next, P);
            if (next_t < fixed_t * (1.0 - 1e-9))
                break;
            double step = 0.0;
            for (std::size_t j = 0; j < g.size(); ++j)
                step = std::max(step, horizontal_distance(g[j], next[j]));
            g = std::move(next);
            fixed_t = next_t;
            if (step <= chi)
                break;
        }
        const double t_prev = t;
        alloc = beam::allocate_powers_lp(hotspot_gains(p, g), etas, p.budget);
        P = alloc.powers;
        t = alloc.objective;
        r.history.push_back(t);
        r.iterations = outer + 1;
        if (std::abs(1.0 - t / t_prev) < options.epsilon)
        {
            r.converged = true;
            break;
        }
    }
    r.pre_mapping_objective = t;
    detail::finalize(p, g, options, r);
    return r;
}

} // namespace stripeplan::deploy

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
#include "stripeplan/conic/appendix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace stripeplan::deploy
{

namespace detail
{

namespace
{

std::vector<Point3> place(const Point3 &center, const std::vector<Point3> &offsets)
{
    std::vector<Point3> g;
    g.reserve(offsets.size());
    for (const auto &o : offsets)
        g.push_back(center + o);
    return g;
}

struct ShapedStep
{
    bool ok = false;
    Point3 center;
    std::vector<double> powers;
};

// One GP in the variables (t, P_i, g[1], g[2], d_{j,i}) around the current center
ShapedStep shaped_gp(const DeploymentProblem &p, const Point3 &center, const std::vector<Point3> &offsets,
                     const std::vector<double> &P0, double omega)
{
    const int K = static_cast<int>(p.hotspots.size());
    const int N = static_cast<int>(offsets.size());

    // c_hat_{j,i} = c_i - o_j; frame puts the center and every c_hat at coordinates >= 1
    std::vector<Point3> shifted;
    for (const auto &h : p.hotspots)
        for (const auto &o : offsets)
            shifted.push_back(h.center - o);
    shifted.push_back(center);
    const Frame frame = make_frame({}, shifted, 1.0);
    shifted.pop_back();
    for (auto &s : shifted)
        s = frame.in(s);
    const Point3 g0 = frame.in(center);

    GpBuilder B;
    const double inf = std::numeric_limits<double>::infinity();
    const int t = B.add(0.0, inf);
    std::vector<int> P(static_cast<std::size_t>(K));
    for (int i = 0; i < K; ++i)
        P[static_cast<std::size_t>(i)] = B.add(0.0, inf);
    const int gx = B.add(g0.x / omega, g0.x * omega);
    const int gy = B.add(g0.y / omega, g0.y * omega);
    std::vector<std::vector<double>> d0(static_cast<std::size_t>(N), std::vector<double>(static_cast<std::size_t>(K)));
    std::vector<std::vector<int>> d(static_cast<std::size_t>(N), std::vector<int>(static_cast<std::size_t>(K)));
    for (int j = 0; j < N; ++j)
        for (int i = 0; i < K; ++i)
        {
            const Point3 &c = shifted[static_cast<std::size_t>(i * N + j)];
            const double v = distance(g0, c);
            d0[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
            d[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = B.add(v / omega, v * omega);
        }

    for (int i = 0; i < K; ++i)
    {
        const Hotspot &h = p.hotspots[static_cast<std::size_t>(i)];
        std::vector<double> col(static_cast<std::size_t>(N));
        std::vector<int> vars(static_cast<std::size_t>(N));
        for (int j = 0; j < N; ++j)
        {
            col[static_cast<std::size_t>(j)] = d0[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            vars[static_cast<std::size_t>(j)] = d[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        }
        const auto hs = conic::hotspot_surrogate(col, p.b, conic::ExponentConvention::derived);
        conic::Monomial lhs;
        lhs.coefficient = h.density / std::pow(h.elevation(p.ceiling_h), p.b);
        lhs.pow(P[static_cast<std::size_t>(i)], -1.0).pow(t, 1.0);
        B.le(std::move(lhs), expansion_monomial(hs.value, vars, hs.beta_hat, col));
    }
    {
        conic::Posynomial budget;
        for (int i = 0; i < K; ++i)
            budget.terms.push_back(conic::Monomial{1.0 / p.budget, {}}.pow(P[static_cast<std::size_t>(i)], 1.0));
        B.le(std::move(budget), conic::Monomial{1.0, {}});
    }
    for (int j = 0; j < N; ++j)
        for (int i = 0; i < K; ++i)
        {
            const Point3 &c = shifted[static_cast<std::size_t>(i * N + j)];
            const int dv = d[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            const double dd = d0[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            const auto s = conic::distance_surrogate(g0, c, dd, conic::ExponentConvention::derived);
            conic::Posynomial lhs;
            lhs.terms.push_back(conic::Monomial{1.0, {}}.pow(dv, -2.0).pow(gx, 2.0));
            lhs.terms.push_back(conic::Monomial{1.0, {}}.pow(dv, -2.0).pow(gy, 2.0));
            lhs.terms.push_back(
                conic::Monomial{g0.z * g0.z + c.x * c.x + c.y * c.y + c.z * c.z, {}}.pow(dv, -2.0));
            const int vars[3] = {dv, gx, gy};
            const double betas[3] = {s.beta_tilde, s.beta_bar[0], s.beta_bar[1]};
            const double pts[3] = {dd, g0.x, g0.y};
            B.le(std::move(lhs), expansion_monomial(s.value, vars, betas, pts));
        }

    auto &gp = B.program();
    gp.objective_var = t;
    std::vector<double> start(static_cast<std::size_t>(B.size()));
    start[static_cast<std::size_t>(gx)] = g0.x;
    start[static_cast<std::size_t>(gy)] = g0.y;
    for (int i = 0; i < K; ++i)
        start[static_cast<std::size_t>(P[static_cast<std::size_t>(i)])] = P0[static_cast<std::size_t>(i)];
    for (int j = 0; j < N; ++j)
        for (int i = 0; i < K; ++i)
            start[static_cast<std::size_t>(d[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])] =
                d0[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    start[static_cast<std::size_t>(t)] = std::max(1e-12, 0.5 * deployment_objective(p, place(center, offsets), P0));

    const auto sol = conic::solve_gp(gp, 1e-9, start);
    ShapedStep out;
    if (sol.status != conic::SolveStatus::optimal)
        return out;
    out.ok = true;
    out.center = frame.out({sol.x[static_cast<std::size_t>(gx)], sol.x[static_cast<std::size_t>(gy)], p.ceiling_h});
    for (int i = 0; i < K; ++i)
        out.powers.push_back(sol.x[static_cast<std::size_t>(P[static_cast<std::size_t>(i)])]);
    return out;
}

} // namespace

DeploymentResult shaped_deploy(const DeploymentProblem &p, const Point3 &init_center,
                               const std::vector<Point3> &offsets, const DeployOptions &options)
{
    p.validate();
    DeploymentResult r;
    Point3 center{init_center.x, init_center.y, p.ceiling_h};
    std::vector<double> etas;
    for (const auto &h : p.hotspots)
        etas.push_back(h.density);
    auto alloc = beam::allocate_powers_closed_form(hotspot_gains(p, place(center, offsets)), etas, p.budget);
    std::vector<double> P = alloc.powers;
    double t_prev = deployment_objective(p, place(center, offsets), P);
    double omega = options.trust.omega;
    int shrinks = 0;
    for (int it = 0; it < options.max_iterations; ++it)
    {
        const ShapedStep step = shaped_gp(p, center, offsets, P, omega);
        double t_new = -1.0;
        if (step.ok)
            t_new = deployment_objective(p, place(step.center, offsets), step.powers);
        if (!step.ok || t_new < t_prev * (1.0 - 1e-9))
        {
            if (++shrinks > options.max_shrinks)
            {
                if (!step.ok)
                {
                    r.success = false;
                    r.message = "GP failed after trust-region reductions; returning last feasible iterate";
                }
                else
                    r.converged = true;
                break;
            }
            omega = 1.0 + 0.5 * (omega - 1.0);
            continue;
        }
        r.iterations = it + 1;
        center = step.center;
        P = step.powers;
        r.history.push_back(t_new);
        const bool done = std::abs(1.0 - t_new / t_prev) <= options.epsilon;
        t_prev = t_new;
        if (done)
        {
            r.converged = true;
            break;
        }
    }
    r.shape_center = center;
    r.pre_mapping_objective = t_prev;
    finalize(p, place(center, offsets), options, r);
    return r;
}

} // namespace detail

DeploymentResult polygon_deploy(const DeploymentProblem &p, const Point3 &init_center, const DeployOptions &options)
{
    if (p.N < 3)
        throw DeploymentError("polygon_deploy: need N >= 3");
    std::vector<Point3> offsets;
    for (int j = 0; j < p.N; ++j)
        offsets.push_back(polygon_offset(j, p.N, p.kappa));
    auto r = detail::shaped_deploy(p, init_center, offsets, options);
    r.method = "polygon";
    return r;
}

DeploymentResult line_deploy_at(const DeploymentProblem &p, const Point3 &init_center, double varphi,
                                const DeployOptions &options)
{
    std::vector<Point3> offsets;
    for (int j = 0; j < p.N; ++j)
        offsets.push_back(line_offset(j, p.N, p.kappa, varphi));
    auto r = detail::shaped_deploy(p, init_center, offsets, options);
    r.method = "line";
    r.line_angle = varphi;
    return r;
}

DeploymentResult line_deploy(const DeploymentProblem &p, const Point3 &init_center, const DeployOptions &options)
{
    if (options.zeta < 1)
        throw DeploymentError("line_deploy: zeta must be at least 1");
    DeploymentResult best;
    bool have = false;
    for (int k = 1; k <= options.zeta; ++k)
    {
        const double varphi = k * pi / options.zeta;
        auto r = line_deploy_at(p, init_center, varphi, options);
        if (!have || r.objective >= best.objective)
        {
            best = std::move(r);
            have = true;
        }
    }
    return best;
}

} // namespace stripeplan::deploy

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

namespace
{

using detail::expansion_monomial;
using detail::GpBuilder;

struct SgpStep
{
    bool ok = false;
    std::vector<Point3> elements;
    std::vector<double> powers;
};

// GP around (g0, d0, alpha0). Pair equalities become a two-sided rho band when relax > 1.
SgpStep sgp_gp(const DeploymentProblem &p, const std::vector<Point3> &g_world, const std::vector<double> &P0,
               double omega, double g_step, double relax, double slack)
{
    const int K = static_cast<int>(p.hotspots.size());
    const int N = static_cast<int>(g_world.size());
    const auto sz = [](int v) { return static_cast<std::size_t>(v); };

    const detail::Frame frame = detail::make_frame(p.hotspots, g_world, 1.0 + (N - 1) * p.kappa);
    std::vector<Point3> g0, c;
    for (const auto &q : g_world)
        g0.push_back(frame.in(q));
    for (const auto &h : p.hotspots)
        c.push_back(frame.in(h.center));

    GpBuilder B;
    const double inf = std::numeric_limits<double>::infinity();
    const int t = B.add(0.0, inf);
    std::vector<int> P(sz(K));
    for (int i = 0; i < K; ++i)
        P[sz(i)] = B.add(0.0, inf);
    std::vector<int> gx(sz(N)), gy(sz(N));
    for (int j = 0; j < N; ++j)
    {
        const Point3 &q = g0[sz(j)];
        gx[sz(j)] = B.add(std::max(q.x / omega, q.x - g_step), std::min(q.x * omega, q.x + g_step));
        gy[sz(j)] = B.add(std::max(q.y / omega, q.y - g_step), std::min(q.y * omega, q.y + g_step));
    }
    std::vector<std::vector<double>> d0(sz(N), std::vector<double>(sz(K)));
    std::vector<std::vector<int>> d(sz(N), std::vector<int>(sz(K)));
    for (int j = 0; j < N; ++j)
        for (int i = 0; i < K; ++i)
        {
            const double v = distance(g0[sz(j)], c[sz(i)]);
            d0[sz(j)][sz(i)] = v;
            d[sz(j)][sz(i)] = B.add(v / omega, v * omega);
        }
    std::vector<std::vector<double>> a0(sz(N), std::vector<double>(sz(N), 0.0));
    std::vector<std::vector<int>> a(sz(N), std::vector<int>(sz(N), -1));
    for (int j = 0; j < N; ++j)
        for (int n = j + 1; n < N; ++n)
        {
            const double v = horizontal_distance(g0[sz(j)], g0[sz(n)]);
            a0[sz(j)][sz(n)] = v;
            a[sz(j)][sz(n)] = B.add(v / omega, v * omega);
        }

    // received-power surrogate per hotspot
    for (int i = 0; i < K; ++i)
    {
        const Hotspot &h = p.hotspots[sz(i)];
        std::vector<double> col(sz(N));
        std::vector<int> vars(sz(N));
        for (int j = 0; j < N; ++j)
        {
            col[sz(j)] = d0[sz(j)][sz(i)];
            vars[sz(j)] = d[sz(j)][sz(i)];
        }
        const auto hs = conic::hotspot_surrogate(col, p.b, conic::ExponentConvention::derived);
        conic::Monomial lhs;
        lhs.coefficient = h.density / std::pow(h.elevation(p.ceiling_h), p.b);
        lhs.pow(P[sz(i)], -1.0).pow(t, 1.0);
        B.le(std::move(lhs), expansion_monomial(hs.value, vars, hs.beta_hat, col));
    }
    {
        conic::Posynomial budget;
        for (int i = 0; i < K; ++i)
            budget.terms.push_back(conic::Monomial{1.0 / p.budget, {}}.pow(P[sz(i)], 1.0));
        B.le(std::move(budget), conic::Monomial{1.0, {}});
    }
    // squared distance to each hotspot
    for (int j = 0; j < N; ++j)
        for (int i = 0; i < K; ++i)
        {
            const Point3 &q = g0[sz(j)];
            const Point3 &ci = c[sz(i)];
            const int dv = d[sz(j)][sz(i)];
            const double dd = d0[sz(j)][sz(i)];
            const auto s = conic::distance_surrogate(q, ci, dd, conic::ExponentConvention::derived);
            conic::Posynomial lhs;
            lhs.terms.push_back(conic::Monomial{1.0, {}}.pow(dv, -2.0).pow(gx[sz(j)], 2.0));
            lhs.terms.push_back(conic::Monomial{1.0, {}}.pow(dv, -2.0).pow(gy[sz(j)], 2.0));
            lhs.terms.push_back(
                conic::Monomial{q.z * q.z + ci.x * ci.x + ci.y * ci.y + ci.z * ci.z, {}}.pow(dv, -2.0));
            const int vars[3] = {dv, gx[sz(j)], gy[sz(j)]};
            const double betas[3] = {s.beta_tilde, s.beta_bar[0], s.beta_bar[1]};
            const double pts[3] = {dd, q.x, q.y};
            B.le(std::move(lhs), expansion_monomial(s.value, vars, betas, pts));
        }
    // pair distances
    conic::Posynomial length;
    for (int j = 0; j < N; ++j)
        for (int n = j + 1; n < N; ++n)
        {
            const Point3 &qj = g0[sz(j)];
            const Point3 &qn = g0[sz(n)];
            const int av = a[sz(j)][sz(n)];
            const double aa = a0[sz(j)][sz(n)];
            const auto s = conic::pair_surrogate(qj, qn, aa, conic::ExponentConvention::derived);
            const int vars[5] = {av, gx[sz(j)], gy[sz(j)], gx[sz(n)], gy[sz(n)]};
            const double pts[5] = {aa, qj.x, qj.y, qn.x, qn.y};
            const double lhs_b[5] = {s.beta_prime, s.tau[0], s.tau[1], s.tau_prime[0], s.tau_prime[1]};
            const double rhs_b[5] = {s.tau_hat, s.tau_bar[0], s.tau_bar[1], s.tau_tilde[0], s.tau_tilde[1]};
            conic::Monomial hp = expansion_monomial(s.h_prime, vars, lhs_b, pts);
            conic::Monomial hb = expansion_monomial(s.h_bar, vars, rhs_b, pts);
            if (relax > 1.0)
            {
                conic::Monomial lo = hb, hi = hb;
                lo.coefficient /= relax;
                hi.coefficient *= relax;
                B.le(std::move(lo), hp);
                B.le(std::move(hp), std::move(hi));
            }
            else
                B.eq(std::move(hp), std::move(hb));

            if (n == j + 1)
            {
                // adjacent pairs get (1 - slack) kappa so that the length budget keeps an interior
                length.terms.push_back(conic::Monomial{1.0 / ((N - 1) * p.kappa), {}}.pow(av, 1.0));
                B.le(conic::Monomial{(1.0 - slack) * p.kappa, {}}.pow(av, -1.0), conic::Monomial{1.0, {}});
            }
            else
                B.le(conic::Monomial{p.kappa, {}}.pow(av, -1.0), conic::Monomial{1.0, {}});
        }
    B.le(std::move(length), conic::Monomial{1.0, {}});

    auto &gp = B.program();
    gp.objective_var = t;
    std::vector<double> start(sz(B.size()));
    for (int i = 0; i < K; ++i)
        start[sz(P[sz(i)])] = P0[sz(i)];
    for (int j = 0; j < N; ++j)
    {
        start[sz(gx[sz(j)])] = g0[sz(j)].x;
        start[sz(gy[sz(j)])] = g0[sz(j)].y;
        for (int i = 0; i < K; ++i)
            start[sz(d[sz(j)][sz(i)])] = d0[sz(j)][sz(i)];
        for (int n = j + 1; n < N; ++n)
            start[sz(a[sz(j)][sz(n)])] = a0[sz(j)][sz(n)];
    }
    start[sz(t)] = std::max(1e-12, 0.5 * deployment_objective(p, g_world, P0));

    const auto sol = conic::solve_gp(gp, 1e-9, start);
    SgpStep out;
    if (sol.status != conic::SolveStatus::optimal)
        return out;
    out.ok = true;
    for (int j = 0; j < N; ++j)
        out.elements.push_back(frame.out({sol.x[sz(gx[sz(j)])], sol.x[sz(gy[sz(j)])], p.ceiling_h}));
    for (int i = 0; i < K; ++i)
        out.powers.push_back(sol.x[sz(P[sz(i)])]);
    return out;
}

} // namespace

DeploymentResult sgp_deploy(const DeploymentProblem &p, const StripeLayout &init, const DeployOptions &options)
{
    p.validate();
    if (init.size() != p.N)
        throw DeploymentError("sgp_deploy: initial layout must have N elements");
    const double g_step = detail::resolved_g_step(p, options.trust);
    std::vector<double> etas;
    for (const auto &h : p.hotspots)
        etas.push_back(h.density);

    DeploymentResult r;
    r.method = "sgp";
    std::vector<Point3> g = init.elements;
    for (auto &q : g)
        q.z = p.ceiling_h;
    auto alloc = beam::allocate_powers_closed_form(hotspot_gains(p, g), etas, p.budget);
    std::vector<double> P = alloc.powers;
    double t_prev = deployment_objective(p, g, P);
    double omega = options.trust.omega;
    int shrinks = 0;
    for (int it = 0; it < options.max_iterations; ++it)
    {
        SgpStep step = sgp_gp(p, g, P, omega, g_step, 1.0, options.spacing_slack);
        if (!step.ok)
            step = sgp_gp(p, g, P, omega, g_step, options.trust.rho, options.spacing_slack);
        double t_new = -1.0;
        if (step.ok)
            t_new = deployment_objective(p, step.elements, step.powers);
        if (!step.ok || t_new < t_prev * (1.0 - 1e-9))
        {
            if (++shrinks > options.max_shrinks)
            {
                if (!step.ok && r.history.empty())
                {
                    r.success = false;
                    r.message = "GP failed after trust-region reductions; returning the initial layout";
                }
                else
                    r.converged = true;
                break;
            }
            omega = 1.0 + 0.5 * (omega - 1.0);
            continue;
        }
        r.iterations = it + 1;
        g = std::move(step.elements);
        P = std::move(step.powers);
        r.history.push_back(t_new);
        const bool done = std::abs(1.0 - t_new / t_prev) <= options.epsilon;
        t_prev = t_new;
        if (done)
        {
            r.converged = true;
            break;
        }
    }
    r.pre_mapping_objective = t_prev;
    detail::finalize(p, g, options, r);
    return r;
}

} // namespace stripeplan::deploy

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

#include <algorithm>
#include <cmath>
#include <limits>

namespace stripeplan::deploy
{

void DeploymentProblem::validate() const
{
    if (N < 2)
        throw DeploymentError("deployment needs N >= 2");
    if (hotspots.empty())
        throw DeploymentError("deployment needs a nonempty cluster");
    if (!(kappa > 0.0))
        throw DeploymentError("kappa must be positive");
    if (!(budget > 0.0))
        throw DeploymentError("power budget must be positive");
    if (b < 0.0)
        throw DeploymentError("boresight gain must be nonnegative");
    for (const auto &h : hotspots)
    {
        if (!(h.elevation(ceiling_h) > 0.0))
            throw DeploymentError("hotspot at or above the ceiling");
        if (!(h.density > 0.0))
            throw DeploymentError("hotspot density must be positive");
    }
}

std::vector<double> hotspot_gains(const DeploymentProblem &p, std::span<const Point3> elements)
{
    std::vector<double> g;
    g.reserve(p.hotspots.size());
    for (const auto &h : p.hotspots)
        g.push_back(normalized_gain(elements, h.center, p.b, p.ceiling_h));
    return g;
}

double deployment_objective(const DeploymentProblem &p, std::span<const Point3> elements,
                            std::span<const double> powers)
{
    const auto G = hotspot_gains(p, elements);
    double t = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < G.size(); ++i)
        t = std::min(t, powers[i] * G[i] / p.hotspots[i].density);
    return t;
}

namespace
{

std::vector<double> etas(const DeploymentProblem &p)
{
    std::vector<double> e;
    for (const auto &h : p.hotspots)
        e.push_back(h.density);
    return e;
}

} // namespace

DeploymentResult baseline_deploy(const DeploymentProblem &p, BaselineKind kind)
{
    p.validate();
    DeploymentResult r;
    r.method = to_string(kind);
    r.layout = baseline_layout(kind, p.hotspots, p.N, p.kappa, p.ceiling_h);
    r.raw_layout = r.layout;
    const auto G = hotspot_gains(p, r.layout.elements);
    const auto e = etas(p);
    auto alloc = beam::allocate_powers_lp(G, e, p.budget);
    r.powers = alloc.powers;
    r.objective = deployment_objective(p, r.layout.elements, r.powers);
    r.pre_mapping_objective = r.objective;
    r.history.push_back(r.objective);
    r.converged = true;
    r.shape_center = hotspot_centroid(p.hotspots, p.ceiling_h);
    return r;
}

std::vector<std::string> method_names()
{
    return {"sgp", "sca", "polygon", "line", "center_upa", "center_rectangle"};
}

bool is_optimized_method(const std::string &method)
{
    return method == "sgp" || method == "sca" || method == "polygon" || method == "line";
}

DeploymentResult deploy(const std::string &method, const DeploymentProblem &p, const Point3 &head,
                        const DeployOptions &options)
{
    const Point3 c{head.x, head.y, p.ceiling_h};
    if (method == "sgp")
        return sgp_deploy(p, initial_loop(c, p.N, p.kappa), options);
    if (method == "sca")
        return sca_deploy(p, initial_loop(c, p.N, p.kappa), options);
    if (method == "polygon")
        return polygon_deploy(p, c, options);
    if (method == "line")
        return line_deploy(p, c, options);
    if (method == "center_upa" || method == "center_rectangle")
        return baseline_deploy(p, parse_baseline(method));
    throw DeploymentError("unknown deployment method '" + method + "'");
}

namespace detail
{

Frame make_frame(std::span<const Hotspot> hotspots, std::span<const Point3> points, double margin)
{
    double mx = std::numeric_limits<double>::infinity(), my = mx;
    for (const auto &h : hotspots)
    {
        mx = std::min(mx, h.center.x);
        my = std::min(my, h.center.y);
    }
    for (const auto &q : points)
    {
        mx = std::min(mx, q.x);
        my = std::min(my, q.y);
    }
    return {mx - margin, my - margin};
}

void finalize(const DeploymentProblem &p, const std::vector<Point3> &raw, const DeployOptions &options,
              DeploymentResult &result)
{
    result.raw_layout = {raw, p.kappa};
    auto mapped = map_to_feasible(raw, p.kappa, options.mapping);
    result.layout = mapped.layout;
    result.mapping_sweeps = mapped.sweeps;
    if (!mapped.feasible)
    {
        result.success = false;
        result.message = mapped.diagnostic;
    }
    const auto G = hotspot_gains(p, result.layout.elements);
    const auto e = etas(p);
    auto alloc = beam::allocate_powers_lp(G, e, p.budget);
    result.powers = alloc.powers;
    result.objective = deployment_objective(p, result.layout.elements, result.powers);
}

int GpBuilder::add(double lower, double upper)
{
    gp_.lower.push_back(lower);
    gp_.upper.push_back(upper);
    return gp_.num_vars++;
}

void GpBuilder::le(conic::Monomial lhs, conic::Monomial rhs)
{
    conic::Posynomial p;
    p.terms.push_back(std::move(lhs));
    gp_.inequalities.push_back({std::move(p), std::move(rhs)});
}

conic::Monomial expansion_monomial(double value, std::span<const int> vars, std::span<const double> betas,
                                   std::span<const double> points)
{
    conic::Monomial m;
    double log_c = std::log(value);
    for (std::size_t l = 0; l < vars.size(); ++l)
    {
        if (betas[l] == 0.0)
            continue;
        log_c -= betas[l] * std::log(points[l]);
        m.exponents.emplace_back(vars[l], betas[l]);
    }
    m.coefficient = std::exp(log_c);
    return m;
}

double resolved_sigma(const DeploymentProblem &p, const TrustRegionState &t)
{
    return t.sigma > 0.0 ? t.sigma : 5.0 * p.kappa;
}

double resolved_chi(const DeploymentProblem &p, const TrustRegionState &t)
{
    return t.chi > 0.0 ? t.chi : 0.1 * p.kappa;
}

double resolved_g_step(const DeploymentProblem &p, const TrustRegionState &t)
{
    return t.g_step > 0.0 ? t.g_step : 5.0 * p.kappa;
}

} // namespace detail

} // namespace stripeplan::deploy

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

#include "stripeplan/conic/appendix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace stripeplan::conic
{

namespace
{

void require_positive(double v, const char *what)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::domain_error(std::string("appendix_coefficients: ") + what + " must be strictly positive");
}

void require_positive(const Point3 &p, const char *what)
{
    require_positive(p.x, what);
    require_positive(p.y, what);
}

double dot3(const Point3 &a, const Point3 &b)
{
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

double dot2(const Point3 &a, const Point3 &b)
{
    return a.x * b.x + a.y * b.y;
}

double sq2(const Point3 &a)
{
    return a.x * a.x + a.y * a.y;
}

} // namespace

double hotspot_source(std::span<const double> d, double b)
{
    double s = 0.0;
    for (double v : d)
        s += std::pow(v, -(b + 2.0));
    return s;
}

double distance_source(const Point3 &g, const Point3 &c, double d)
{
    return 1.0 + 2.0 * dot3(g, c) / (d * d);
}

double pair_lhs_source(const Point3 &gj, const Point3 &gn, double alpha)
{
    return (sq2(gj) + sq2(gn)) / (alpha * alpha);
}

double pair_rhs_source(const Point3 &gj, const Point3 &gn, double alpha)
{
    return 1.0 + 2.0 * dot2(gj, gn) / (alpha * alpha);
}

HotspotSurrogate hotspot_surrogate(std::span<const double> d0, double b, ExponentConvention conv)
{
    HotspotSurrogate h;
    for (double v : d0)
        require_positive(v, "element-hotspot distance");
    h.value = hotspot_source(d0, b);
    const double pre = conv == ExponentConvention::tabulated ? -(b + 3.0) : -(b + 2.0);
    h.beta_hat.reserve(d0.size());
    for (double v : d0)
        h.beta_hat.push_back(pre * std::pow(v, -(b + 2.0)) / h.value);
    return h;
}

DistanceSurrogate distance_surrogate(const Point3 &g0, const Point3 &c, double d0, ExponentConvention conv)
{
    require_positive(g0, "element coordinate");
    require_positive(c, "hotspot coordinate");
    require_positive(d0, "element-hotspot distance");
    DistanceSurrogate s;
    const double inv = 1.0 / (d0 * d0);
    const double G = dot3(g0, c);
    s.value = 1.0 + 2.0 * inv * G;
    s.beta_tilde = -4.0 * inv * G / s.value;
    const double k = conv == ExponentConvention::tabulated ? 1.0 : 2.0;
    s.beta_bar = {k * g0.x * inv * c.x / s.value, k * g0.y * inv * c.y / s.value};
    return s;
}

PairSurrogate pair_surrogate(const Point3 &gj0, const Point3 &gn0, double alpha0, ExponentConvention)
{
    require_positive(gj0, "element coordinate");
    require_positive(gn0, "element coordinate");
    require_positive(alpha0, "element pair distance");
    PairSurrogate p;
    const double inv = 1.0 / (alpha0 * alpha0);
    const double S = sq2(gj0) + sq2(gn0);
    p.h_prime = inv * S;
    p.beta_prime = -2.0;
    p.tau = {2.0 * gj0.x * gj0.x / S, 2.0 * gj0.y * gj0.y / S};
    p.tau_prime = {2.0 * gn0.x * gn0.x / S, 2.0 * gn0.y * gn0.y / S};
    const double P = dot2(gj0, gn0);
    p.h_bar = 1.0 + 2.0 * inv * P;
    p.tau_hat = -4.0 * inv * P / p.h_bar;
    p.tau_bar = {2.0 * inv * gj0.x * gn0.x / p.h_bar, 2.0 * inv * gj0.y * gn0.y / p.h_bar};
    p.tau_tilde = p.tau_bar;
    return p;
}

AppendixSurrogates appendix_coefficients(const ExpansionPoint &point, std::span<const Point3> hotspots, double b,
                                         ExponentConvention conv)
{
    const std::size_t N = point.elements.size();
    const std::size_t K = hotspots.size();
    if (point.d.size() != N)
        throw std::invalid_argument("appendix_coefficients: d0 must have one row per element");
    AppendixSurrogates out;
    out.hotspot.resize(K);
    std::vector<double> col(N);
    for (std::size_t i = 0; i < K; ++i)
    {
        for (std::size_t j = 0; j < N; ++j)
        {
            if (point.d[j].size() != K)
                throw std::invalid_argument("appendix_coefficients: d0 must have one column per hotspot");
            col[j] = point.d[j][i];
        }
        out.hotspot[i] = hotspot_surrogate(col, b, conv);
    }
    out.distance.assign(N, std::vector<DistanceSurrogate>(K));
    for (std::size_t j = 0; j < N; ++j)
        for (std::size_t i = 0; i < K; ++i)
            out.distance[j][i] = distance_surrogate(point.elements[j], hotspots[i], point.d[j][i], conv);
    if (!point.alpha.empty())
    {
        if (point.alpha.size() != N)
            throw std::invalid_argument("appendix_coefficients: alpha0 must be N x N");
        out.pair.assign(N, std::vector<PairSurrogate>(N));
        for (std::size_t j = 0; j < N; ++j)
            for (std::size_t n = j + 1; n < N; ++n)
                out.pair[j][n] = pair_surrogate(point.elements[j], point.elements[n], point.alpha[j][n], conv);
    }
    return out;
}

} // namespace stripeplan::conic

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

#include "stripeplan/geometry.hpp"

#include <array>
#include <span>
#include <vector>

namespace stripeplan::conic
{

// Closed-form monomial surrogates of the deployment signomial program.
//
//   h_hat_i      ~ sum_j d_{j,i}^-(b+2)                     over d_{.,i}
//   h_tilde_{j,i} ~ 1 + 2 d_{j,i}^-2 sum_r g_j[r] c_i[r]     over d_{j,i}, g_j[1], g_j[2]
//   h'_{j,n}     ~ alpha^-2 (|g_j|^2 + |g_n|^2)              over alpha, g_j[1..2], g_n[1..2]
//   h_bar_{j,n}  ~ 1 + 2 alpha^-2 g_j . g_n                  over alpha, g_j[1..2], g_n[1..2]
//
// Hotspot sums run over x, y, z; element pair sums over x, y only, since
// both elements share z = h_c and the z terms cancel in alpha^2.
enum class ExponentConvention
{
    derived,  // exponents from the monomial approximation rule (used by the solvers)
    tabulated // reference table: -(b+3) hotspot prefactor, beta-bar without the factor 2
};

struct HotspotSurrogate
{
    double value = 0.0;
    std::vector<double> beta_hat; // one per element
};

struct DistanceSurrogate
{
    double value = 0.0;
    double beta_tilde = 0.0;
    std::array<double, 2> beta_bar{};
};

struct PairSurrogate
{
    double h_prime = 0.0;
    double beta_prime = 0.0;
    std::array<double, 2> tau{};
    std::array<double, 2> tau_prime{};
    double h_bar = 0.0;
    double tau_hat = 0.0;
    std::array<double, 2> tau_bar{};
    std::array<double, 2> tau_tilde{};
};

HotspotSurrogate hotspot_surrogate(std::span<const double> d0, double b, ExponentConvention conv);
DistanceSurrogate distance_surrogate(const Point3 &g0, const Point3 &c, double d0, ExponentConvention conv);
PairSurrogate pair_surrogate(const Point3 &gj0, const Point3 &gn0, double alpha0, ExponentConvention conv);

// Source functions the surrogates approximate
double hotspot_source(std::span<const double> d, double b);
double distance_source(const Point3 &g, const Point3 &c, double d);
double pair_lhs_source(const Point3 &gj, const Point3 &gn, double alpha);
double pair_rhs_source(const Point3 &gj, const Point3 &gn, double alpha);

struct ExpansionPoint
{
    std::vector<Point3> elements;           // g0_j
    std::vector<std::vector<double>> d;     // d0[j][i]
    std::vector<std::vector<double>> alpha; // alpha0[j][n], symmetric
};

struct AppendixSurrogates
{
    std::vector<HotspotSurrogate> hotspot;                // [i]
    std::vector<std::vector<DistanceSurrogate>> distance; // [j][i]
    std::vector<std::vector<PairSurrogate>> pair;         // [j][n], filled for j < n

    const PairSurrogate &at(int j, int n) const { return pair[static_cast<std::size_t>(j)][static_cast<std::size_t>(n)]; }
};

// All surrogates at an expansion point. Every coordinate and distance must be positive.
AppendixSurrogates appendix_coefficients(const ExpansionPoint &point, std::span<const Point3> hotspots, double b,
                                         ExponentConvention conv = ExponentConvention::derived);

} // namespace stripeplan::conic

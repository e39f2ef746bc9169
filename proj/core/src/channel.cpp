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

#include "stripeplan/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace stripeplan
{

RegionBounds fresnel_fraunhofer(double D, double lambda)
{
    if (!(lambda > 0.0))
        throw std::invalid_argument("wavelength must be positive");
    if (!(D >= 0.0))
        throw std::invalid_argument("aperture diameter must be nonnegative");
    return {std::cbrt(D * D * D * D / (8.0 * lambda)), 2.0 * D * D / lambda};
}

double array_diameter(const StripeLayout &layout)
{
    if (layout.elements.empty())
        throw std::invalid_argument("array_diameter: empty layout");
    double best = 0.0;
    const auto &g = layout.elements;
    for (std::size_t j = 0; j < g.size(); ++j)
        for (std::size_t n = j + 1; n < g.size(); ++n)
            best = std::max(best, distance(g[j], g[n]));
    return best;
}

double radiation_profile(double theta, double b)
{
    if (theta < 0.0 || theta > 0.5 * pi)
        return 0.0;
    const double c = std::max(0.0, std::cos(theta));
    return 2.0 * (b + 1.0) * std::pow(c, b);
}

std::complex<double> channel_coefficient(const Point3 &g, const Point3 &c, double lambda, double b, double ceiling_h)
{
    const double d = distance(g, c);
    if (!(d > 0.0))
        throw std::invalid_argument("channel_coefficient: element coincides with the receiver");
    const double cos_theta = std::clamp((ceiling_h - c.z) / d, -1.0, 1.0);
    const double F = radiation_profile(std::acos(cos_theta), b);
    const double A = std::sqrt(F) * lambda / (4.0 * pi * d);
    return std::polar(A, -2.0 * pi * d / lambda);
}

Eigen::VectorXcd channel_vector(const StripeLayout &layout, const Point3 &c, const RfParams &rf)
{
    Eigen::VectorXcd h(layout.size());
    for (int j = 0; j < layout.size(); ++j)
        h[j] = channel_coefficient(layout.elements[static_cast<std::size_t>(j)], c, rf.lambda, rf.boresight_b,
                                   rf.ceiling_h);
    return h;
}

double normalized_gain(std::span<const Point3> elements, const Point3 &c, double b, double ceiling_h)
{
    const double e = ceiling_h - c.z;
    double sum = 0.0;
    for (const auto &g : elements)
    {
        const double d = distance(g, c);
        if (!(d > 0.0))
            throw std::invalid_argument("channel gain: element coincides with the receiver");
        sum += std::pow(d, -(b + 2.0));
    }
    return std::pow(e, b) * sum;
}

double channel_gain_sq(const StripeLayout &layout, const Point3 &c, double b, double ceiling_h, double lambda)
{
    const double k = lambda / (4.0 * pi);
    return 2.0 * (b + 1.0) * k * k * normalized_gain(layout.elements, c, b, ceiling_h);
}

SpacingReport spacing_report(const StripeLayout &layout)
{
    SpacingReport r;
    const auto &g = layout.elements;
    r.min_pairwise = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j + 1 < g.size(); ++j)
    {
        const double d = distance(g[j], g[j + 1]);
        r.total_length += d;
        r.max_consecutive_error = std::max(r.max_consecutive_error, std::abs(d - layout.kappa));
    }
    for (std::size_t j = 0; j < g.size(); ++j)
        for (std::size_t n = j + 1; n < g.size(); ++n)
            r.min_pairwise = std::min(r.min_pairwise, distance(g[j], g[n]));
    return r;
}

} // namespace stripeplan

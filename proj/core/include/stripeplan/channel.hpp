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

#include <Eigen/Core>
#include <complex>
#include <span>
#include <vector>

namespace stripeplan
{

// Ordered element positions of one radio stripe
struct StripeLayout
{
    std::vector<Point3> elements;
    double kappa = 0.0;

    int size() const { return static_cast<int>(elements.size()); }
};

struct RfParams
{
    double lambda = 0.03;
    double boresight_b = 2.0;
    double ceiling_h = 5.0;
};

struct RegionBounds
{
    double fresnel = 0.0;     // r_fs
    double fraunhofer = 0.0;  // r_fr
};

// Radiative near-field boundaries of an aperture of diameter D
RegionBounds fresnel_fraunhofer(double D, double lambda);

// Largest pairwise element distance; 0 for a single element
double array_diameter(const StripeLayout &layout);

// 2(b+1) cos^b(theta) on [0, pi/2], zero elsewhere
double radiation_profile(double theta, double b);

// Line-of-sight coefficient between element g (on the ceiling) and point c
std::complex<double> channel_coefficient(const Point3 &g, const Point3 &c, double lambda, double b, double ceiling_h);

// Channel vector of a whole stripe towards c
Eigen::VectorXcd channel_vector(const StripeLayout &layout, const Point3 &c, const RfParams &rf);

// ||h||^2 via the closed-form sum over element distances
double channel_gain_sq(const StripeLayout &layout, const Point3 &c, double b, double ceiling_h, double lambda);

// Same quantity without the (lambda / 4 pi)^2 and 2(b+1) factors:
// e^b * sum_j d_j^-(b+2). This is the gain used by the optimizers.
double normalized_gain(std::span<const Point3> elements, const Point3 &c, double b, double ceiling_h);

struct SpacingReport
{
    double max_consecutive_error = 0.0; // max_j | ||g_j - g_{j+1}|| - kappa |
    double min_pairwise = 0.0;          // min over all j != n
    double total_length = 0.0;          // sum of consecutive distances

    bool feasible(double kappa, double tol = 1e-9) const
    {
        return max_consecutive_error <= tol && min_pairwise >= kappa - tol;
    }
};

SpacingReport spacing_report(const StripeLayout &layout);

} // namespace stripeplan

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

#include "stripeplan/conic/gp.hpp"
#include "stripeplan/deployment/deploy.hpp"

#include <span>
#include <vector>

namespace stripeplan::deploy::detail
{

// Translation that makes every horizontal coordinate at least `margin`
struct Frame
{
    double ox = 0.0;
    double oy = 0.0;

    Point3 in(const Point3 &p) const { return {p.x - ox, p.y - oy, p.z}; }
    Point3 out(const Point3 &p) const { return {p.x + ox, p.y + oy, p.z}; }
};

Frame make_frame(std::span<const Hotspot> hotspots, std::span<const Point3> points, double margin);

// Map the raw layout, then re-optimize powers on the mapped geometry
void finalize(const DeploymentProblem &p, const std::vector<Point3> &raw, const DeployOptions &options,
              DeploymentResult &result);

// Variable registry for GP construction
class GpBuilder
{
  public:
    int add(double lower, double upper);
    void le(conic::Posynomial lhs, conic::Monomial rhs) { gp_.inequalities.push_back({std::move(lhs), std::move(rhs)}); }
    void le(conic::Monomial lhs, conic::Monomial rhs);
    void eq(conic::Monomial lhs, conic::Monomial rhs) { gp_.equalities.push_back({std::move(lhs), std::move(rhs)}); }
    int size() const { return gp_.num_vars; }
    conic::GeometricProgram &program() { return gp_; }

  private:
    conic::GeometricProgram gp_;
};

// coefficient * prod (v / v0)^beta expressed over variables
conic::Monomial expansion_monomial(double value, std::span<const int> vars, std::span<const double> betas,
                                   std::span<const double> points);

double resolved_sigma(const DeploymentProblem &p, const TrustRegionState &t);
double resolved_chi(const DeploymentProblem &p, const TrustRegionState &t);
double resolved_g_step(const DeploymentProblem &p, const TrustRegionState &t);

// Shared loop for polygon and line: elements are center + offsets[j]
DeploymentResult shaped_deploy(const DeploymentProblem &p, const Point3 &init_center,
                               const std::vector<Point3> &offsets, const DeployOptions &options);

} // namespace stripeplan::deploy::detail

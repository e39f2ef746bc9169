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

#include "stripeplan/channel.hpp"
#include "stripeplan/deployment/layouts.hpp"
#include "stripeplan/deployment/mapping.hpp"
#include "stripeplan/scenario.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace stripeplan::deploy
{

class DeploymentError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// One stripe serving one cluster of hotspots
struct DeploymentProblem
{
    std::vector<Hotspot> hotspots;
    int N = 2;
    double kappa = 0.015;
    double b = 2.0;
    double budget = 1.0; // watts
    double ceiling_h = 5.0;

    void validate() const;
};

struct TrustRegionState
{
    double omega = 1.1;  // GP box factor
    double rho = 1.05;   // pair-equality relaxation
    double sigma = 0.0;  // SCA ball radius; 0 selects 5 kappa
    double chi = 0.0;    // SCA inner step tolerance; 0 selects kappa / 10
    double g_step = 0.0; // SGP absolute box on element coordinates; 0 selects 5 kappa
};

struct DeployOptions
{
    double epsilon = 1e-6;
    int max_iterations = 100;
    TrustRegionState trust;
    MappingOptions mapping;
    int zeta = 50;          // line angles
    int sca_inner_max = 30; // location steps per power update
    int max_shrinks = 3;    // trust-region reductions after an infeasible GP
    double spacing_slack = 1e-3; // free-form methods: adjacent spacing >= (1 - slack) kappa
};

struct DeploymentResult
{
    std::string method;
    StripeLayout layout;
    StripeLayout raw_layout; // before feasibility mapping
    std::vector<double> powers; // watts, one per hotspot
    double objective = 0.0;     // min_i P_i G_i / eta_i on the final layout
    double pre_mapping_objective = 0.0;
    std::vector<double> history; // objective after every accepted outer iteration
    int iterations = 0;
    bool converged = false;
    bool success = true;
    std::string message;
    int mapping_sweeps = 0;
    double line_angle = 0.0;  // line_deploy only
    Point3 shape_center{};    // polygon / line only
};

// G_i = e_i^b sum_j d_{j,i}^-(b+2)
std::vector<double> hotspot_gains(const DeploymentProblem &p, std::span<const Point3> elements);

// min_i P_i G_i / eta_i
double deployment_objective(const DeploymentProblem &p, std::span<const Point3> elements,
                            std::span<const double> powers);

DeploymentResult sgp_deploy(const DeploymentProblem &p, const StripeLayout &init, const DeployOptions &options = {});
DeploymentResult sca_deploy(const DeploymentProblem &p, const StripeLayout &init, const DeployOptions &options = {});
DeploymentResult polygon_deploy(const DeploymentProblem &p, const Point3 &init_center,
                                const DeployOptions &options = {});
DeploymentResult line_deploy(const DeploymentProblem &p, const Point3 &init_center, const DeployOptions &options = {});

// Line GP loop at one fixed angle
DeploymentResult line_deploy_at(const DeploymentProblem &p, const Point3 &init_center, double varphi,
                                const DeployOptions &options = {});

// Baseline layout with LP powers
DeploymentResult baseline_deploy(const DeploymentProblem &p, BaselineKind kind);

// Method names: sgp, sca, polygon, line, center_upa, center_rectangle
std::vector<std::string> method_names();
bool is_optimized_method(const std::string &method);
DeploymentResult deploy(const std::string &method, const DeploymentProblem &p, const Point3 &head,
                        const DeployOptions &options = {});

} // namespace stripeplan::deploy

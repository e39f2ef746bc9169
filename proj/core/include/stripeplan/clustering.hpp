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

#include "stripeplan/scenario.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace stripeplan::cluster
{

class ClusterError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct ClusterSolution
{
    Eigen::MatrixXd assignment; // K x U, one-hot rows
    std::vector<Point3> heads;  // z = ceiling
    double objective = 0.0;     // max_{u,i} v_{u,i} * Delta_{u,i}

    // FAC-AO only: relaxed objective after every LP step
    std::vector<double> relaxed_history;
    // K-Chebyshev only: largest hotspot-to-head Chebyshev distance after every sweep
    std::vector<double> chebyshev_history;
    int iterations = 0;

    int num_hotspots() const { return static_cast<int>(assignment.rows()); }
    int num_clusters() const { return static_cast<int>(assignment.cols()); }
    // Stripe index per hotspot (row argmax, lowest index on ties)
    std::vector<int> labels() const;
};

// eta * |s - c|^(b+2) / e^b with e = h_c - c_z
double loss_metric(const Point3 &head, const Hotspot &hotspot, double b, double ceiling_h);

// K x U matrix of loss_metric values
Eigen::MatrixXd loss_matrix(std::span<const Point3> heads, std::span<const Hotspot> hotspots, double b,
                            double ceiling_h);

// max_{u,i} v_{u,i} Delta_{u,i}
double assignment_objective(const Eigen::MatrixXd &v, std::span<const Point3> heads,
                            std::span<const Hotspot> hotspots, double b, double ceiling_h);

struct HeadsResult
{
    std::vector<Point3> heads;
    std::vector<double> cluster_objective; // per stripe
    double objective = 0.0;                // max over stripes
};

// Min-max head placement for a (possibly fractional) K x U weight matrix.
// Hotspots with zero weight in a column are ignored for that stripe.
HeadsResult optimize_heads(const Eigen::MatrixXd &weights, std::span<const Hotspot> hotspots, double b,
                           double ceiling_h, double tol = 1e-10);

struct RelaxedAssignment
{
    Eigen::MatrixXd v; // K x U, rows sum to 1
    double objective = 0.0;
};

// LP relaxation of the assignment for fixed heads
RelaxedAssignment relax_assign(std::span<const Point3> heads, std::span<const Hotspot> hotspots, double b,
                               double ceiling_h);

// One-hot rows at the row argmax; entries within 1e-9 of the maximum count as ties
Eigen::MatrixXd project_assignment(const Eigen::MatrixXd &v);

struct FacAoOptions
{
    double epsilon = 1e-6;
    int max_iterations = 500;
};

ClusterSolution fac_ao(std::span<const Hotspot> hotspots, int U, const ClusterSolution &init, double b,
                       double ceiling_h, const FacAoOptions &options = {});

// Horizontal Chebyshev distance max(|dx|, |dy|)
double chebyshev_distance(const Point3 &a, const Point3 &b);

ClusterSolution chebyshev_cluster(std::span<const Hotspot> hotspots, int U, double b, double ceiling_h,
                                  std::uint64_t seed, int max_iter = 100);

// Uniformly random assignment with every stripe nonempty (U <= K)
ClusterSolution random_assignment(std::span<const Hotspot> hotspots, int U, double b, double ceiling_h,
                                  std::uint64_t seed);

} // namespace stripeplan::cluster

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

#include "stripeplan/conic/interior_point.hpp"

#include <Eigen/Core>
#include <vector>

namespace stripeplan::conic
{

// ||A x + b|| <= c.x + d
struct SecondOrderCone
{
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    Eigen::VectorXd c;
    double d = 0.0;
};

// minimize objective.x subject to cones, A_ub x <= b_ub, A_eq x == b_eq
struct SecondOrderProgram
{
    Eigen::VectorXd objective;
    std::vector<SecondOrderCone> cones;
    Eigen::MatrixXd A_ub;
    Eigen::VectorXd b_ub;
    Eigen::MatrixXd A_eq;
    Eigen::VectorXd b_eq;

    int num_vars() const { return static_cast<int>(objective.size()); }
};

struct ConicSolution
{
    SolveStatus status = SolveStatus::numerical_failure;
    double value = 0.0;
    Eigen::VectorXd x;
    double max_residual = 0.0; // largest cone/linear violation of x
    int newton_steps = 0;
};

ConicSolution solve_socp(const SecondOrderProgram &p, double tol = 1e-9, const Eigen::VectorXd *start = nullptr);

// Dense-to-sparse conversion shared with callers building ConvexProgram directly
SparseRow sparse_row(const Eigen::Ref<const Eigen::RowVectorXd> &row);

} // namespace stripeplan::conic

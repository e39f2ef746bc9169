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

namespace stripeplan::conic
{

// minimize (or maximize) objective.x
// s.t. A_ub x <= b_ub, A_eq x == b_eq, lower <= x <= upper.
// Empty bound vectors mean free variables; entries may be +-infinity.
struct LinearProgram
{
    Eigen::VectorXd objective;
    bool maximize = false;
    Eigen::MatrixXd A_ub;
    Eigen::VectorXd b_ub;
    Eigen::MatrixXd A_eq;
    Eigen::VectorXd b_eq;
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;

    int num_vars() const { return static_cast<int>(objective.size()); }
    void validate() const;
};

struct LpSolution
{
    SolveStatus status = SolveStatus::numerical_failure;
    double value = 0.0;
    Eigen::VectorXd x;
    int pivots = 0;
    double primal_residual = 0.0; // largest constraint violation of x
};

// Dense two-phase primal simplex (Dantzig pricing with Bland's rule as anti-cycling fallback)
LpSolution solve_lp(const LinearProgram &p, double tol = 1e-9);

} // namespace stripeplan::conic

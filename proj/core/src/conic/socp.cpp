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

#include "stripeplan/conic/socp.hpp"

#include <stdexcept>

namespace stripeplan::conic
{

SparseRow sparse_row(const Eigen::Ref<const Eigen::RowVectorXd> &row)
{
    SparseRow r;
    for (Eigen::Index j = 0; j < row.size(); ++j)
        if (row[j] != 0.0)
            r.add(static_cast<int>(j), row[j]);
    return r;
}

ConicSolution solve_socp(const SecondOrderProgram &p, double tol, const Eigen::VectorXd *start)
{
    const int n = p.num_vars();
    if (n == 0)
        throw std::invalid_argument("SecondOrderProgram: no variables");
    ConvexProgram cp(n);
    for (int j = 0; j < n; ++j)
        cp.set_objective(j, p.objective[j]);
    for (const auto &k : p.cones)
    {
        if (k.A.cols() != n || k.A.rows() != k.b.size() || k.c.size() != n)
            throw std::invalid_argument("SecondOrderProgram: cone has inconsistent dimensions");
        std::vector<SparseRow> rows;
        std::vector<double> offs;
        for (Eigen::Index r = 0; r < k.A.rows(); ++r)
        {
            rows.push_back(sparse_row(k.A.row(r)));
            offs.push_back(k.b[r]);
        }
        cp.add_cone(std::move(rows), std::move(offs), sparse_row(k.c.transpose()), k.d);
    }
    if (p.A_ub.rows() != p.b_ub.size() || (p.A_ub.rows() && p.A_ub.cols() != n))
        throw std::invalid_argument("SecondOrderProgram: inequality block has inconsistent dimensions");
    if (p.A_eq.rows() != p.b_eq.size() || (p.A_eq.rows() && p.A_eq.cols() != n))
        throw std::invalid_argument("SecondOrderProgram: equality block has inconsistent dimensions");
    for (Eigen::Index r = 0; r < p.A_ub.rows(); ++r)
        cp.add_linear(sparse_row(p.A_ub.row(r)), p.b_ub[r]);
    for (Eigen::Index r = 0; r < p.A_eq.rows(); ++r)
        cp.add_equality(sparse_row(p.A_eq.row(r)), p.b_eq[r]);

    InteriorPointOptions opt;
    opt.tolerance = tol;
    const auto res = solve_interior_point(cp, opt, start);
    ConicSolution sol;
    sol.status = res.status;
    sol.newton_steps = res.newton_steps;
    if (res.x.size() == n)
    {
        sol.x = res.x;
        sol.value = p.objective.dot(res.x);
        sol.max_residual = cp.max_violation(res.x);
    }
    return sol;
}

} // namespace stripeplan::conic

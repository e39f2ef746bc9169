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

#include <Eigen/Core>
#include <complex>
#include <string>
#include <vector>

namespace stripeplan::conic
{

enum class SolveStatus
{
    optimal,
    infeasible,
    unbounded,
    numerical_failure
};

const char *to_string(SolveStatus s);

// Sparse row a: a.x = sum value[k] * x[index[k]]
struct SparseRow
{
    std::vector<int> index;
    std::vector<double> value;

    SparseRow &add(int i, double v)
    {
        index.push_back(i);
        value.push_back(v);
        return *this;
    }
    double dot(const Eigen::VectorXd &x) const
    {
        double s = 0.0;
        for (std::size_t k = 0; k < index.size(); ++k)
            s += value[k] * x[index[k]];
        return s;
    }
};

// Convex program over x in R^n:
//   minimize  c.x
//   s.t.      a.x <= b                                 (linear)
//             log sum_k exp(a_k.x + o_k) <= 0          (log-sum-exp)
//             || R x + r || <= a.x + o                 (second-order cone)
//             F0 + sum_v x_v F_v  is Hermitian PSD     (linear matrix inequality)
//             a.x == b                                 (equality)
class ConvexProgram
{
  public:
    explicit ConvexProgram(int num_vars);

    int num_vars() const { return n_; }

    void set_objective(int var, double coeff) { c_[var] = coeff; }
    const Eigen::VectorXd &objective() const { return c_; }

    void add_linear(SparseRow a, double b);
    void add_log_sum_exp(std::vector<SparseRow> exponents, std::vector<double> offsets);
    void add_cone(std::vector<SparseRow> rows, std::vector<double> offsets, SparseRow axis, double axis_offset);
    void add_lmi(std::vector<int> vars, std::vector<Eigen::MatrixXcd> mats, Eigen::MatrixXcd constant);
    void add_equality(SparseRow a, double b);

    struct Linear
    {
        SparseRow a;
        double b;
    };
    struct LogSumExp
    {
        std::vector<SparseRow> rows;
        std::vector<double> offsets;
    };
    struct Cone
    {
        std::vector<SparseRow> rows;
        std::vector<double> offsets;
        SparseRow axis;
        double axis_offset;
    };
    struct Lmi
    {
        std::vector<int> vars;
        std::vector<Eigen::MatrixXcd> mats;
        Eigen::MatrixXcd constant;
    };

    const std::vector<Linear> &linear() const { return linear_; }
    const std::vector<LogSumExp> &log_sum_exp() const { return lse_; }
    const std::vector<Cone> &cones() const { return cones_; }
    const std::vector<Lmi> &lmis() const { return lmis_; }
    const std::vector<Linear> &equalities() const { return eq_; }

    // Largest constraint violation at x (0 when feasible)
    double max_violation(const Eigen::VectorXd &x) const;

  private:
    void check_row(const SparseRow &a) const;

    int n_;
    Eigen::VectorXd c_;
    std::vector<Linear> linear_;
    std::vector<LogSumExp> lse_;
    std::vector<Cone> cones_;
    std::vector<Lmi> lmis_;
    std::vector<Linear> eq_;
};

struct InteriorPointOptions
{
    double tolerance = 1e-9;       // target duality-gap bound theta / tau
    double barrier_growth = 20.0;  // mu
    double newton_tolerance = 1e-10;
    int max_newton_steps = 3000;
    // Half-width of a box around the start point, scaled by 1 + |start|_inf. Keeps the
    // barrier bounded below; a solution pressed against the box reports unbounded.
    double box_radius = 1e6;
    bool relative_gap = true;      // gap bound scaled by max(1, |objective|)
};

struct InteriorPointResult
{
    SolveStatus status = SolveStatus::numerical_failure;
    Eigen::VectorXd x;
    double objective = 0.0;
    int newton_steps = 0;
    std::string message;
};

// Primal log-barrier path following with a phase-I feasibility search.
// The optional start point is used to seed phase I.
InteriorPointResult solve_interior_point(const ConvexProgram &program, const InteriorPointOptions &options = {},
                                         const Eigen::VectorXd *start = nullptr);

} // namespace stripeplan::conic

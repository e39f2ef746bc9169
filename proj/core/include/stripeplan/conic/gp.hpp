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

#include <span>
#include <utility>
#include <vector>

namespace stripeplan::conic
{

// c * prod_l v_l^a_l with c > 0
struct Monomial
{
    double coefficient = 1.0;
    std::vector<std::pair<int, double>> exponents; // (variable, exponent)

    Monomial &pow(int var, double a)
    {
        exponents.emplace_back(var, a);
        return *this;
    }
    double evaluate(std::span<const double> v) const;
};

struct Posynomial
{
    std::vector<Monomial> terms;
    double evaluate(std::span<const double> v) const;
};

// maximize v[objective_var] over v > 0
// s.t. lhs_k(v) <= rhs_k(v) (posynomial <= monomial), monomial equalities,
//      lower <= v <= upper (entries 0 / +inf mean no bound)
struct GeometricProgram
{
    struct Inequality
    {
        Posynomial lhs;
        Monomial rhs;
    };
    struct Equality
    {
        Monomial lhs;
        Monomial rhs;
    };

    int num_vars = 0;
    int objective_var = 0;
    std::vector<Inequality> inequalities;
    std::vector<Equality> equalities;
    std::vector<double> lower;
    std::vector<double> upper;

    void validate() const;
};

struct GpSolution
{
    SolveStatus status = SolveStatus::numerical_failure;
    double value = 0.0;
    std::vector<double> x;
    int newton_steps = 0;
};

// Solves the log-transformed convex program (y = log v) with the barrier method.
// tol bounds the relative error of the optimal value.
GpSolution solve_gp(const GeometricProgram &p, double tol = 1e-8, std::span<const double> start = {});

} // namespace stripeplan::conic

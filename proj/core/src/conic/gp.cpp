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

#include "stripeplan/conic/gp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace stripeplan::conic
{

double Monomial::evaluate(std::span<const double> v) const
{
    double r = coefficient;
    for (auto [i, a] : exponents)
        r *= std::pow(v[static_cast<std::size_t>(i)], a);
    return r;
}

double Posynomial::evaluate(std::span<const double> v) const
{
    double r = 0.0;
    for (const auto &t : terms)
        r += t.evaluate(v);
    return r;
}

void GeometricProgram::validate() const
{
    if (num_vars < 1)
        throw std::invalid_argument("GeometricProgram: no variables");
    if (objective_var < 0 || objective_var >= num_vars)
        throw std::invalid_argument("GeometricProgram: objective variable out of range");
    auto check = [&](const Monomial &m) {
        if (!(m.coefficient > 0.0) || !std::isfinite(m.coefficient))
            throw std::invalid_argument("GeometricProgram: monomial coefficients must be positive and finite");
        for (auto [i, a] : m.exponents)
        {
            if (i < 0 || i >= num_vars)
                throw std::invalid_argument("GeometricProgram: variable index out of range");
            if (!std::isfinite(a))
                throw std::invalid_argument("GeometricProgram: non-finite exponent");
        }
    };
    for (const auto &c : inequalities)
    {
        if (c.lhs.terms.empty())
            throw std::invalid_argument("GeometricProgram: empty posynomial");
        for (const auto &t : c.lhs.terms)
            check(t);
        check(c.rhs);
    }
    for (const auto &e : equalities)
    {
        check(e.lhs);
        check(e.rhs);
    }
    if ((!lower.empty() && static_cast<int>(lower.size()) != num_vars) ||
        (!upper.empty() && static_cast<int>(upper.size()) != num_vars))
        throw std::invalid_argument("GeometricProgram: bound vectors have wrong length");
    for (std::size_t i = 0; i < lower.size(); ++i)
        if (lower[i] < 0.0)
            throw std::invalid_argument("GeometricProgram: lower bounds must be nonnegative");
}

namespace
{

// log(lhs_term / rhs) as an affine row in y
SparseRow log_ratio(const Monomial &num, const Monomial &den, double &offset)
{
    SparseRow r;
    for (auto [i, a] : num.exponents)
        r.add(i, a);
    for (auto [i, a] : den.exponents)
        r.add(i, -a);
    offset = std::log(num.coefficient) - std::log(den.coefficient);
    return r;
}

} // namespace

GpSolution solve_gp(const GeometricProgram &p, double tol, std::span<const double> start)
{
    p.validate();
    const int n = p.num_vars;
    ConvexProgram cp(n);
    cp.set_objective(p.objective_var, -1.0);
    for (const auto &c : p.inequalities)
    {
        if (c.lhs.terms.size() == 1)
        {
            double off = 0.0;
            SparseRow r = log_ratio(c.lhs.terms[0], c.rhs, off);
            cp.add_linear(std::move(r), -off);
        }
        else
        {
            std::vector<SparseRow> rows;
            std::vector<double> offs;
            for (const auto &t : c.lhs.terms)
            {
                double off = 0.0;
                rows.push_back(log_ratio(t, c.rhs, off));
                offs.push_back(off);
            }
            cp.add_log_sum_exp(std::move(rows), std::move(offs));
        }
    }
    for (const auto &e : p.equalities)
    {
        double off = 0.0;
        SparseRow r = log_ratio(e.lhs, e.rhs, off);
        cp.add_equality(std::move(r), -off);
    }
    for (int i = 0; i < n; ++i)
    {
        if (!p.lower.empty() && p.lower[static_cast<std::size_t>(i)] > 0.0)
            cp.add_linear(SparseRow{}.add(i, -1.0), -std::log(p.lower[static_cast<std::size_t>(i)]));
        if (!p.upper.empty() && std::isfinite(p.upper[static_cast<std::size_t>(i)]))
            cp.add_linear(SparseRow{}.add(i, 1.0), std::log(p.upper[static_cast<std::size_t>(i)]));
    }

    Eigen::VectorXd y0 = Eigen::VectorXd::Zero(n);
    if (!start.empty())
    {
        if (static_cast<int>(start.size()) != n)
            throw std::invalid_argument("solve_gp: start has wrong dimension");
        for (int i = 0; i < n; ++i)
        {
            if (!(start[static_cast<std::size_t>(i)] > 0.0))
                throw std::invalid_argument("solve_gp: start must be strictly positive");
            y0[i] = std::log(start[static_cast<std::size_t>(i)]);
        }
    }
    InteriorPointOptions opt;
    opt.tolerance = tol;
    opt.relative_gap = false; // gap in log space is already relative
    opt.box_radius = 60.0; // log space
    const auto res = solve_interior_point(cp, opt, &y0);
    GpSolution sol;
    sol.status = res.status;
    sol.newton_steps = res.newton_steps;
    if (res.x.size() == n && res.status != SolveStatus::infeasible)
    {
        sol.x.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            sol.x[static_cast<std::size_t>(i)] = std::exp(res.x[i]);
        sol.value = sol.x[static_cast<std::size_t>(p.objective_var)];
    }
    return sol;
}

} // namespace stripeplan::conic

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

#include "stripeplan/conic/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace stripeplan::conic
{

namespace
{

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Tableau
{
    RowMatrix T; // rows 0..m-1 constraints, row m objective; last column rhs
    std::vector<int> basis;
    int m = 0;
    int ncol = 0;
    int pivots = 0;

    void pivot(int r, int c)
    {
        T.row(r) /= T(r, c);
        for (int i = 0; i <= m; ++i)
        {
            if (i == r)
                continue;
            const double f = T(i, c);
            if (f != 0.0)
                T.row(i) -= f * T.row(r);
        }
        basis[static_cast<std::size_t>(r)] = c;
        ++pivots;
    }
};

enum class Outcome
{
    optimal,
    unbounded,
    stalled
};

Outcome run_simplex(Tableau &tb, const std::vector<char> &allowed, double tol)
{
    const int rhs = tb.ncol;
    int degenerate_run = 0;
    bool bland = false;
    const int limit = 50 * (tb.m + tb.ncol) + 1000;
    for (int iter = 0; iter < limit; ++iter)
    {
        int enter = -1;
        double best = -tol;
        for (int j = 0; j < tb.ncol; ++j)
        {
            if (!allowed[static_cast<std::size_t>(j)])
                continue;
            const double rc = tb.T(tb.m, j);
            if (rc < -tol)
            {
                if (bland)
                {
                    enter = j;
                    break;
                }
                if (rc < best)
                {
                    best = rc;
                    enter = j;
                }
            }
        }
        if (enter < 0)
            return Outcome::optimal;
        int leave = -1;
        double ratio = std::numeric_limits<double>::infinity();
        for (int i = 0; i < tb.m; ++i)
        {
            const double a = tb.T(i, enter);
            if (a > tol)
            {
                const double r = std::max(tb.T(i, rhs), 0.0) / a;
                if (r < ratio - 1e-15 ||
                    (r <= ratio + 1e-15 && leave >= 0 &&
                     tb.basis[static_cast<std::size_t>(i)] < tb.basis[static_cast<std::size_t>(leave)]))
                {
                    ratio = std::min(ratio, r);
                    leave = i;
                }
            }
        }
        if (leave < 0)
            return Outcome::unbounded;
        if (ratio <= 1e-14)
        {
            if (++degenerate_run > 50)
                bland = true;
        }
        else
            degenerate_run = 0;
        tb.pivot(leave, enter);
    }
    return Outcome::stalled;
}

} // namespace

void LinearProgram::validate() const
{
    const auto n = objective.size();
    if (n == 0)
        throw std::invalid_argument("LinearProgram: no variables");
    if (A_ub.rows() != b_ub.size() || (A_ub.rows() > 0 && A_ub.cols() != n))
        throw std::invalid_argument("LinearProgram: inequality block has inconsistent dimensions");
    if (A_eq.rows() != b_eq.size() || (A_eq.rows() > 0 && A_eq.cols() != n))
        throw std::invalid_argument("LinearProgram: equality block has inconsistent dimensions");
    if ((lower.size() != 0 && lower.size() != n) || (upper.size() != 0 && upper.size() != n))
        throw std::invalid_argument("LinearProgram: bound vectors have wrong length");
}

LpSolution solve_lp(const LinearProgram &p, double tol)
{
    p.validate();
    constexpr double inf = std::numeric_limits<double>::infinity();
    const int n = p.num_vars();
    LpSolution sol;

    Eigen::VectorXd lo = p.lower.size() ? p.lower : Eigen::VectorXd::Constant(n, -inf);
    Eigen::VectorXd hi = p.upper.size() ? p.upper : Eigen::VectorXd::Constant(n, inf);
    for (int j = 0; j < n; ++j)
        if (lo[j] > hi[j])
        {
            sol.status = SolveStatus::infeasible;
            return sol;
        }

    // x_j = offset_j + sum sign * y_col, y >= 0
    std::vector<std::vector<std::pair<int, double>>> cols(static_cast<std::size_t>(n));
    Eigen::VectorXd offset = Eigen::VectorXd::Zero(n);
    int ny = 0;
    std::vector<std::pair<int, double>> range_rows; // (column, width) for y <= width
    for (int j = 0; j < n; ++j)
    {
        auto &cj = cols[static_cast<std::size_t>(j)];
        if (std::isfinite(lo[j]))
        {
            offset[j] = lo[j];
            cj.emplace_back(ny, 1.0);
            if (std::isfinite(hi[j]))
                range_rows.emplace_back(ny, hi[j] - lo[j]);
            ++ny;
        }
        else if (std::isfinite(hi[j]))
        {
            offset[j] = hi[j];
            cj.emplace_back(ny++, -1.0);
        }
        else
        {
            cj.emplace_back(ny++, 1.0);
            cj.emplace_back(ny++, -1.0);
        }
    }

    const int mub = static_cast<int>(p.A_ub.rows());
    const int meq = static_cast<int>(p.A_eq.rows());
    const int mr = static_cast<int>(range_rows.size());
    const int m = mub + mr + meq;
    const int nslack = mub + mr;

    // constraint rows over y, before slacks
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, ny);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
    auto fill = [&](int r, const Eigen::MatrixXd &M, int src, double rhs) {
        double shifted = rhs;
        for (int j = 0; j < n; ++j)
        {
            const double a = M(src, j);
            if (a == 0.0)
                continue;
            shifted -= a * offset[j];
            for (auto [c, s] : cols[static_cast<std::size_t>(j)])
                A(r, c) += a * s;
        }
        b[r] = shifted;
    };
    for (int r = 0; r < mub; ++r)
        fill(r, p.A_ub, r, p.b_ub[r]);
    for (int r = 0; r < mr; ++r)
    {
        A(mub + r, range_rows[static_cast<std::size_t>(r)].first) = 1.0;
        b[mub + r] = range_rows[static_cast<std::size_t>(r)].second;
    }
    for (int r = 0; r < meq; ++r)
        fill(nslack + r, p.A_eq, r, p.b_eq[r]);

    // columns: y (ny), slacks (nslack), artificials (m at most)
    std::vector<int> art_row;
    std::vector<int> needs_art;
    for (int r = 0; r < m; ++r)
    {
        const bool has_slack = r < nslack;
        if (!(has_slack && b[r] >= 0.0))
            needs_art.push_back(r);
    }
    const int nart = static_cast<int>(needs_art.size());
    Tableau tb;
    tb.m = m;
    tb.ncol = ny + nslack + nart;
    tb.T = RowMatrix::Zero(m + 1, tb.ncol + 1);
    tb.basis.assign(static_cast<std::size_t>(m), -1);
    for (int r = 0; r < m; ++r)
    {
        const double sgn = b[r] < 0.0 ? -1.0 : 1.0;
        for (int c = 0; c < ny; ++c)
            tb.T(r, c) = sgn * A(r, c);
        if (r < nslack)
            tb.T(r, ny + r) = sgn;
        tb.T(r, tb.ncol) = sgn * b[r];
        if (r < nslack && sgn > 0.0)
            tb.basis[static_cast<std::size_t>(r)] = ny + r;
    }
    for (int k = 0; k < nart; ++k)
    {
        const int r = needs_art[static_cast<std::size_t>(k)];
        tb.T(r, ny + nslack + k) = 1.0;
        tb.basis[static_cast<std::size_t>(r)] = ny + nslack + k;
    }

    const double bscale = 1.0 + b.lpNorm<Eigen::Infinity>();
    std::vector<char> allowed(static_cast<std::size_t>(tb.ncol), 1);

    // phase I
    if (nart > 0)
    {
        for (int k = 0; k < nart; ++k)
        {
            const int r = needs_art[static_cast<std::size_t>(k)];
            tb.T.row(m) -= tb.T.row(r);
            tb.T(m, ny + nslack + k) += 1.0;
        }
        if (run_simplex(tb, allowed, tol) == Outcome::stalled)
        {
            sol.status = SolveStatus::numerical_failure;
            return sol;
        }
        if (-tb.T(m, tb.ncol) > tol * bscale)
        {
            sol.status = SolveStatus::infeasible;
            sol.pivots = tb.pivots;
            return sol;
        }
        // drive remaining artificials out of the basis
        for (int r = 0; r < m; ++r)
        {
            if (tb.basis[static_cast<std::size_t>(r)] < ny + nslack)
                continue;
            int best = -1;
            double amax = tol;
            for (int c = 0; c < ny + nslack; ++c)
                if (std::abs(tb.T(r, c)) > amax)
                {
                    amax = std::abs(tb.T(r, c));
                    best = c;
                }
            if (best >= 0)
                tb.pivot(r, best);
        }
        for (int k = 0; k < nart; ++k)
            allowed[static_cast<std::size_t>(ny + nslack + k)] = 0;
    }

    // phase II objective over y
    Eigen::VectorXd cy = Eigen::VectorXd::Zero(tb.ncol);
    const double sense = p.maximize ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j)
    {
        const double cj = sense * p.objective[j];
        for (auto [c, s] : cols[static_cast<std::size_t>(j)])
            cy[c] += cj * s;
    }
    tb.T.row(m).setZero();
    for (int c = 0; c < tb.ncol; ++c)
        tb.T(m, c) = cy[c];
    for (int r = 0; r < m; ++r)
    {
        const int bc = tb.basis[static_cast<std::size_t>(r)];
        const double f = tb.T(m, bc);
        if (f != 0.0)
            tb.T.row(m) -= f * tb.T.row(r);
    }
    const Outcome out = run_simplex(tb, allowed, tol);
    sol.pivots = tb.pivots;
    if (out == Outcome::unbounded)
    {
        sol.status = SolveStatus::unbounded;
        return sol;
    }
    if (out == Outcome::stalled)
    {
        sol.status = SolveStatus::numerical_failure;
        return sol;
    }

    Eigen::VectorXd y = Eigen::VectorXd::Zero(tb.ncol);
    for (int r = 0; r < m; ++r)
        y[tb.basis[static_cast<std::size_t>(r)]] = tb.T(r, tb.ncol);
    sol.x = offset;
    for (int j = 0; j < n; ++j)
        for (auto [c, s] : cols[static_cast<std::size_t>(j)])
            sol.x[j] += s * y[c];
    sol.value = p.objective.dot(sol.x);

    double res = 0.0;
    if (mub)
        res = std::max(res, (p.A_ub * sol.x - p.b_ub).maxCoeff());
    if (meq)
        res = std::max(res, (p.A_eq * sol.x - p.b_eq).cwiseAbs().maxCoeff());
    for (int j = 0; j < n; ++j)
        res = std::max({res, lo[j] - sol.x[j], sol.x[j] - hi[j]});
    sol.primal_residual = std::max(res, 0.0);
    sol.status = sol.primal_residual <= 1e3 * tol * bscale ? SolveStatus::optimal : SolveStatus::numerical_failure;
    return sol;
}

} // namespace stripeplan::conic

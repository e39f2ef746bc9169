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

#include "stripeplan/conic/interior_point.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace stripeplan::conic
{

const char *to_string(SolveStatus s)
{
    switch (s)
    {
    case SolveStatus::optimal:
        return "optimal";
    case SolveStatus::infeasible:
        return "infeasible";
    case SolveStatus::unbounded:
        return "unbounded";
    case SolveStatus::numerical_failure:
        return "numerical_failure";
    }
    return "unknown";
}

namespace
{

constexpr double inf = std::numeric_limits<double>::infinity();

SparseRow canonical(const SparseRow &a)
{
    std::map<int, double> acc;
    for (std::size_t k = 0; k < a.index.size(); ++k)
        acc[a.index[k]] += a.value[k];
    SparseRow out;
    for (auto [i, v] : acc)
        if (v != 0.0)
            out.add(i, v);
    return out;
}

} // namespace

// ---------------------------------------------------------------------------------------------
// ConvexProgram

ConvexProgram::ConvexProgram(int num_vars) : n_(num_vars), c_(Eigen::VectorXd::Zero(num_vars))
{
    if (num_vars < 1)
        throw std::invalid_argument("ConvexProgram: need at least one variable");
}

void ConvexProgram::check_row(const SparseRow &a) const
{
    if (a.index.size() != a.value.size())
        throw std::invalid_argument("ConvexProgram: row index/value size mismatch");
    for (std::size_t k = 0; k < a.index.size(); ++k)
    {
        if (a.index[k] < 0 || a.index[k] >= n_)
            throw std::invalid_argument("ConvexProgram: variable index out of range");
        if (!std::isfinite(a.value[k]))
            throw std::invalid_argument("ConvexProgram: non-finite coefficient");
    }
}

void ConvexProgram::add_linear(SparseRow a, double b)
{
    check_row(a);
    linear_.push_back({canonical(a), b});
}

void ConvexProgram::add_log_sum_exp(std::vector<SparseRow> exponents, std::vector<double> offsets)
{
    if (exponents.empty() || exponents.size() != offsets.size())
        throw std::invalid_argument("ConvexProgram: malformed log-sum-exp constraint");
    for (auto &r : exponents)
    {
        check_row(r);
        r = canonical(r);
    }
    lse_.push_back({std::move(exponents), std::move(offsets)});
}

void ConvexProgram::add_cone(std::vector<SparseRow> rows, std::vector<double> offsets, SparseRow axis,
                             double axis_offset)
{
    if (rows.size() != offsets.size())
        throw std::invalid_argument("ConvexProgram: malformed cone constraint");
    for (auto &r : rows)
    {
        check_row(r);
        r = canonical(r);
    }
    check_row(axis);
    cones_.push_back({std::move(rows), std::move(offsets), canonical(axis), axis_offset});
}

void ConvexProgram::add_lmi(std::vector<int> vars, std::vector<Eigen::MatrixXcd> mats, Eigen::MatrixXcd constant)
{
    if (vars.size() != mats.size())
        throw std::invalid_argument("ConvexProgram: malformed matrix inequality");
    for (std::size_t k = 0; k < vars.size(); ++k)
    {
        if (vars[k] < 0 || vars[k] >= n_)
            throw std::invalid_argument("ConvexProgram: variable index out of range");
        if (mats[k].rows() != constant.rows() || mats[k].cols() != constant.cols())
            throw std::invalid_argument("ConvexProgram: matrix inequality dimension mismatch");
    }
    lmis_.push_back({std::move(vars), std::move(mats), std::move(constant)});
}

void ConvexProgram::add_equality(SparseRow a, double b)
{
    check_row(a);
    eq_.push_back({canonical(a), b});
}

double ConvexProgram::max_violation(const Eigen::VectorXd &x) const
{
    double v = 0.0;
    for (const auto &l : linear_)
        v = std::max(v, l.a.dot(x) - l.b);
    for (const auto &l : eq_)
        v = std::max(v, std::abs(l.a.dot(x) - l.b));
    for (const auto &l : lse_)
    {
        double m = -inf;
        std::vector<double> z(l.rows.size());
        for (std::size_t k = 0; k < z.size(); ++k)
            m = std::max(m, z[k] = l.rows[k].dot(x) + l.offsets[k]);
        double s = 0.0;
        for (double zk : z)
            s += std::exp(zk - m);
        v = std::max(v, m + std::log(s));
    }
    for (const auto &c : cones_)
    {
        double s = 0.0;
        for (std::size_t k = 0; k < c.rows.size(); ++k)
        {
            const double r = c.rows[k].dot(x) + c.offsets[k];
            s += r * r;
        }
        v = std::max(v, std::sqrt(s) - (c.axis.dot(x) + c.axis_offset));
    }
    for (const auto &m : lmis_)
    {
        Eigen::MatrixXcd X = m.constant;
        for (std::size_t k = 0; k < m.vars.size(); ++k)
            X += x[m.vars[k]] * m.mats[k];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(X, Eigen::EigenvaluesOnly);
        v = std::max(v, -es.eigenvalues().minCoeff());
    }
    return v;
}

// ---------------------------------------------------------------------------------------------
// Barrier engine

namespace
{

enum class Kind
{
    linear,
    lse,
    cone,
    lmi
};

// One barrier term in reduced coordinates, stored densely over its support
struct Block
{
    Kind kind = Kind::linear;
    std::vector<int> support;
    Eigen::MatrixXd rows;    // linear: 1 x k; lse: m x k; cone: m x k
    Eigen::VectorXd offsets; // linear: f = rows x + offsets <= 0
    Eigen::VectorXd axis;    // cone only
    double axis_offset = 0.0;
    std::vector<Eigen::MatrixXcd> mats; // lmi: one per support variable
    Eigen::MatrixXcd mat0;
    std::vector<int> slots; // value-array positions of lower-triangular support pairs
    double theta = 1.0;
};

// Affine map x = constant + sum coef * z over reduced variables
struct AffineMap
{
    std::vector<std::vector<std::pair<int, double>>> coef; // per original variable
    Eigen::VectorXd constant;
    int reduced = 0;
};

struct ReducedRow
{
    std::vector<std::pair<int, double>> terms;
    double constant = 0.0;
};

ReducedRow reduce_row(const SparseRow &a, const AffineMap &map, std::vector<double> &scratch,
                      std::vector<int> &touched)
{
    ReducedRow out;
    for (std::size_t k = 0; k < a.index.size(); ++k)
    {
        const int i = a.index[k];
        const double v = a.value[k];
        out.constant += v * map.constant[i];
        for (auto [z, c] : map.coef[static_cast<std::size_t>(i)])
        {
            if (scratch[static_cast<std::size_t>(z)] == 0.0)
                touched.push_back(z);
            scratch[static_cast<std::size_t>(z)] += v * c;
            if (scratch[static_cast<std::size_t>(z)] == 0.0)
                scratch[static_cast<std::size_t>(z)] = 1e-300; // keep it marked as touched
        }
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (int z : touched)
    {
        const double v = scratch[static_cast<std::size_t>(z)];
        if (std::abs(v) > 1e-290)
            out.terms.emplace_back(z, v);
        scratch[static_cast<std::size_t>(z)] = 0.0;
    }
    touched.clear();
    return out;
}

class Engine
{
  public:
    Engine(int n, std::vector<Block> blocks, Eigen::VectorXd c) : n_(n), blocks_(std::move(blocks)), c_(std::move(c))
    {
        theta_ = 0.0;
        for (const auto &b : blocks_)
            theta_ += b.theta;
        build_pattern();
    }

    int size() const { return n_; }
    double theta() const { return theta_; }
    const Eigen::VectorXd &cost() const { return c_; }

    // Barrier value; +inf outside the domain
    double barrier(const Eigen::VectorXd &x) const
    {
        double phi = 0.0;
        for (const auto &b : blocks_)
        {
            const double v = block_value(b, x);
            if (!std::isfinite(v))
                return inf;
            phi += v;
        }
        return phi;
    }

    bool strictly_feasible(const Eigen::VectorXd &x) const { return std::isfinite(barrier(x)); }

    // Newton centering at barrier weight tau. Returns false on numerical trouble.
    // stop(x) may request an early exit after any step.
    template <class Stop>
    bool center(Eigen::VectorXd &x, double tau, const InteriorPointOptions &opt, int &steps, Stop &&stop,
                bool &stopped)
    {
        Eigen::VectorXd g(n_), dx(n_), trial(n_);
        stopped = false;
        for (int it = 0; it < 200; ++it)
        {
            if (steps >= opt.max_newton_steps)
                return false;
            ++steps;
            if (!derivatives(x, g))
                return false;
            g += tau * c_;
            if (!factorize())
                return false;
            dx = -solver_.solve(g);
            if (!dx.allFinite())
                return false;
            const double lambda2 = -g.dot(dx);
            if (lambda2 < 0.5 * opt.newton_tolerance)
                return true;
            const double f0 = tau * c_.dot(x) + barrier(x);
            // predicted decrease below the rounding level of f0
            if (lambda2 < 1e-12 * (1.0 + std::abs(f0)))
                return true;
            double t = 1.0;
            double f1 = inf;
            for (int ls = 0; ls < 80; ++ls)
            {
                trial = x + t * dx;
                const double phi = barrier(trial);
                if (std::isfinite(phi))
                {
                    f1 = tau * c_.dot(trial) + phi;
                    if (f1 <= f0 - 0.25 * t * lambda2)
                        break;
                    // decrease below rounding level of f0: accept the tiny step
                    if (t * lambda2 < 1e-13 * (1.0 + std::abs(f0)))
                        break;
                }
                t *= 0.5;
            }
            if (!std::isfinite(f1))
                return true; // cannot move inside the domain any more; treat as centered
            x = trial;
            if (stop(x))
            {
                stopped = true;
                return true;
            }
            if (t < 1e-12)
                return true;
        }
        return true;
    }

  private:
    void build_pattern()
    {
        std::vector<Eigen::Triplet<double>> trip;
        for (int i = 0; i < n_; ++i)
            trip.emplace_back(i, i, 0.0);
        for (const auto &b : blocks_)
            for (std::size_t p = 0; p < b.support.size(); ++p)
                for (std::size_t q = 0; q <= p; ++q)
                {
                    const int r = std::max(b.support[p], b.support[q]);
                    const int c = std::min(b.support[p], b.support[q]);
                    trip.emplace_back(r, c, 0.0);
                }
        H_.resize(n_, n_);
        H_.setFromTriplets(trip.begin(), trip.end());
        H_.makeCompressed();
        auto slot = [&](int r, int c) {
            const int *inner = H_.innerIndexPtr();
            const int begin = H_.outerIndexPtr()[c];
            const int end = H_.outerIndexPtr()[c + 1];
            const int *pos = std::lower_bound(inner + begin, inner + end, r);
            return static_cast<int>(pos - inner);
        };
        diag_slots_.resize(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i)
            diag_slots_[static_cast<std::size_t>(i)] = slot(i, i);
        for (auto &b : blocks_)
        {
            b.slots.clear();
            for (std::size_t p = 0; p < b.support.size(); ++p)
                for (std::size_t q = 0; q <= p; ++q)
                    b.slots.push_back(slot(std::max(b.support[p], b.support[q]), std::min(b.support[p], b.support[q])));
        }
        solver_.analyzePattern(H_);
    }

    static Eigen::VectorXd gather(const Block &b, const Eigen::VectorXd &x)
    {
        Eigen::VectorXd xl(static_cast<Eigen::Index>(b.support.size()));
        for (std::size_t k = 0; k < b.support.size(); ++k)
            xl[static_cast<Eigen::Index>(k)] = x[b.support[k]];
        return xl;
    }

    static double lse(const Eigen::VectorXd &z, Eigen::VectorXd *p)
    {
        const double m = z.maxCoeff();
        Eigen::VectorXd e = (z.array() - m).exp();
        const double s = e.sum();
        if (p)
            *p = e / s;
        return m + std::log(s);
    }

    static bool lmi_matrix(const Block &b, const Eigen::VectorXd &xl, Eigen::MatrixXcd &X)
    {
        X = b.mat0;
        for (std::size_t k = 0; k < b.mats.size(); ++k)
            X += xl[static_cast<Eigen::Index>(k)] * b.mats[k];
        return X.allFinite();
    }

    static double block_value(const Block &b, const Eigen::VectorXd &x)
    {
        const Eigen::VectorXd xl = gather(b, x);
        switch (b.kind)
        {
        case Kind::linear: {
            const double f = b.rows.row(0).dot(xl) + b.offsets[0];
            return f < 0.0 ? -std::log(-f) : inf;
        }
        case Kind::lse: {
            const double f = lse(b.rows * xl + b.offsets, nullptr);
            return f < 0.0 ? -std::log(-f) : inf;
        }
        case Kind::cone: {
            const double u = b.axis.dot(xl) + b.axis_offset;
            if (!(u > 0.0))
                return inf;
            const Eigen::VectorXd v = b.rows * xl + b.offsets;
            const double q = (u - v.norm()) * (u + v.norm());
            return q > 0.0 ? -std::log(q) : inf;
        }
        case Kind::lmi: {
            Eigen::MatrixXcd X;
            if (!lmi_matrix(b, xl, X))
                return inf;
            Eigen::LLT<Eigen::MatrixXcd> llt(X);
            if (llt.info() != Eigen::Success)
                return inf;
            double logdet = 0.0;
            for (Eigen::Index i = 0; i < X.rows(); ++i)
            {
                const double d = std::real(llt.matrixL()(i, i));
                if (!(d > 0.0))
                    return inf;
                logdet += 2.0 * std::log(d);
            }
            return -logdet;
        }
        }
        return inf;
    }

    bool derivatives(const Eigen::VectorXd &x, Eigen::VectorXd &grad)
    {
        grad.setZero();
        double *vals = H_.valuePtr();
        std::fill(vals, vals + H_.nonZeros(), 0.0);
        Eigen::VectorXd gl;
        Eigen::MatrixXd Hl;
        for (const auto &b : blocks_)
        {
            const Eigen::VectorXd xl = gather(b, x);
            const auto k = static_cast<Eigen::Index>(b.support.size());
            switch (b.kind)
            {
            case Kind::linear: {
                const double f = b.rows.row(0).dot(xl) + b.offsets[0];
                if (!(f < 0.0))
                    return false;
                const Eigen::VectorXd a = b.rows.row(0).transpose();
                gl = a / (-f);
                Hl = a * a.transpose() / (f * f);
                break;
            }
            case Kind::lse: {
                Eigen::VectorXd p;
                const double f = lse(b.rows * xl + b.offsets, &p);
                if (!(f < 0.0))
                    return false;
                const Eigen::VectorXd gf = b.rows.transpose() * p;
                const Eigen::MatrixXd W = b.rows.transpose() * p.asDiagonal() * b.rows;
                Hl = (W - gf * gf.transpose()) / (-f) + gf * gf.transpose() / (f * f);
                gl = gf / (-f);
                break;
            }
            case Kind::cone: {
                const double u = b.axis.dot(xl) + b.axis_offset;
                const Eigen::VectorXd v = b.rows * xl + b.offsets;
                const double q = (u - v.norm()) * (u + v.norm());
                if (!(u > 0.0) || !(q > 0.0))
                    return false;
                const Eigen::VectorXd gq = 2.0 * u * b.axis - 2.0 * b.rows.transpose() * v;
                const Eigen::MatrixXd Hq = 2.0 * b.axis * b.axis.transpose() - 2.0 * b.rows.transpose() * b.rows;
                gl = -gq / q;
                Hl = -Hq / q + gq * gq.transpose() / (q * q);
                break;
            }
            case Kind::lmi: {
                Eigen::MatrixXcd X;
                if (!lmi_matrix(b, xl, X))
                    return false;
                Eigen::LLT<Eigen::MatrixXcd> llt(X);
                if (llt.info() != Eigen::Success)
                    return false;
                const auto D = X.rows();
                std::vector<Eigen::MatrixXcd> P(static_cast<std::size_t>(k));
                gl.resize(k);
                for (Eigen::Index a = 0; a < k; ++a)
                {
                    P[static_cast<std::size_t>(a)] = llt.solve(b.mats[static_cast<std::size_t>(a)]);
                    gl[a] = -std::real(P[static_cast<std::size_t>(a)].trace());
                }
                Hl.resize(k, k);
                for (Eigen::Index a = 0; a < k; ++a)
                    for (Eigen::Index c = 0; c <= a; ++c)
                    {
                        const auto &Pa = P[static_cast<std::size_t>(a)];
                        const auto &Pc = P[static_cast<std::size_t>(c)];
                        double s = 0.0;
                        for (Eigen::Index i = 0; i < D; ++i)
                            s += std::real(Pa.row(i).transpose().cwiseProduct(Pc.col(i)).sum());
                        Hl(a, c) = Hl(c, a) = s;
                    }
                break;
            }
            }
            if (!gl.allFinite() || !Hl.allFinite())
                return false;
            std::size_t s = 0;
            for (Eigen::Index p = 0; p < k; ++p)
            {
                grad[b.support[static_cast<std::size_t>(p)]] += gl[p];
                for (Eigen::Index q = 0; q <= p; ++q)
                    vals[b.slots[s++]] += Hl(p, q);
            }
        }
        return grad.allFinite();
    }

    bool factorize()
    {
        double *vals = H_.valuePtr();
        double maxdiag = 0.0;
        for (int i = 0; i < n_; ++i)
            maxdiag = std::max(maxdiag, std::abs(vals[diag_slots_[static_cast<std::size_t>(i)]]));
        if (!(maxdiag > 0.0) || !std::isfinite(maxdiag))
            maxdiag = 1.0;
        // tiny per-diagonal shift keeps the system nonsingular without flattening weakly curved
        // directions; the absolute floor covers variables no constraint curves
        diag_.resize(n_);
        for (int i = 0; i < n_; ++i)
            diag_[i] = vals[diag_slots_[static_cast<std::size_t>(i)]];
        double rel = 1e-14;
        for (int attempt = 0; attempt < 12; ++attempt)
        {
            for (int i = 0; i < n_; ++i)
                vals[diag_slots_[static_cast<std::size_t>(i)]] = diag_[i] + rel * (std::abs(diag_[i]) + 1e-16 * maxdiag);
            solver_.factorize(H_);
            bool ok = solver_.info() == Eigen::Success;
            if (ok)
            {
                const auto &D = solver_.vectorD();
                ok = D.allFinite() && D.minCoeff() > 0.0;
            }
            if (ok)
                return true;
            rel *= 100.0;
        }
        return false;
    }

    int n_;
    std::vector<Block> blocks_;
    Eigen::VectorXd c_;
    double theta_ = 0.0;
    Eigen::SparseMatrix<double> H_;
    Eigen::VectorXd diag_;
    std::vector<int> diag_slots_;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>, Eigen::Lower, Eigen::AMDOrdering<int>> solver_;
};

// Builds x = constant + coef z, eliminating every equality constraint.
// Returns false when the equalities are inconsistent.
bool eliminate_equalities(const ConvexProgram &p, const Eigen::VectorXd &start, AffineMap &map)
{
    const int n = p.num_vars();
    const auto &eqs = p.equalities();
    map.coef.assign(static_cast<std::size_t>(n), {});
    map.constant = Eigen::VectorXd::Zero(n);

    // normalized rows
    std::vector<SparseRow> rows;
    std::vector<double> rhs;
    for (const auto &e : eqs)
    {
        double nrm = 0.0;
        for (double v : e.a.value)
            nrm += v * v;
        nrm = std::sqrt(nrm);
        if (nrm == 0.0)
        {
            if (std::abs(e.b) > 1e-12)
                return false;
            continue;
        }
        SparseRow r = e.a;
        for (double &v : r.value)
            v /= nrm;
        rows.push_back(r);
        rhs.push_back(e.b / nrm);
    }

    // pivot substitution for variables owned by a single equality
    std::vector<int> count(static_cast<std::size_t>(n), 0);
    for (const auto &r : rows)
        for (int i : r.index)
            ++count[static_cast<std::size_t>(i)];
    std::vector<int> pivot_of_row(rows.size(), -1);
    std::vector<char> is_pivot(static_cast<std::size_t>(n), 0);
    for (std::size_t r = 0; r < rows.size(); ++r)
    {
        double amax = 0.0;
        for (double v : rows[r].value)
            amax = std::max(amax, std::abs(v));
        int best = -1;
        double best_abs = 0.0;
        for (std::size_t k = 0; k < rows[r].index.size(); ++k)
        {
            const int i = rows[r].index[k];
            const double a = std::abs(rows[r].value[k]);
            if (count[static_cast<std::size_t>(i)] == 1 && a >= 1e-3 * amax && a > best_abs)
            {
                best = i;
                best_abs = a;
            }
        }
        if (best >= 0)
        {
            pivot_of_row[r] = best;
            is_pivot[static_cast<std::size_t>(best)] = 1;
        }
    }

    // remaining equalities via QR over the columns they touch
    std::vector<std::size_t> rest;
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (pivot_of_row[r] < 0)
            rest.push_back(r);
    std::vector<int> J;
    for (auto r : rest)
        for (int i : rows[r].index)
            J.push_back(i);
    std::sort(J.begin(), J.end());
    J.erase(std::unique(J.begin(), J.end()), J.end());
    std::vector<int> jpos(static_cast<std::size_t>(n), -1);
    for (std::size_t k = 0; k < J.size(); ++k)
        jpos[static_cast<std::size_t>(J[k])] = static_cast<int>(k);

    int z = 0;
    for (int i = 0; i < n; ++i)
        if (!is_pivot[static_cast<std::size_t>(i)] && jpos[static_cast<std::size_t>(i)] < 0)
        {
            map.coef[static_cast<std::size_t>(i)].emplace_back(z++, 1.0);
        }

    if (!rest.empty())
    {
        const auto m = static_cast<Eigen::Index>(rest.size());
        const auto nj = static_cast<Eigen::Index>(J.size());
        Eigen::MatrixXd E = Eigen::MatrixXd::Zero(m, nj);
        Eigen::VectorXd f(m);
        for (Eigen::Index r = 0; r < m; ++r)
        {
            const auto &row = rows[rest[static_cast<std::size_t>(r)]];
            for (std::size_t k = 0; k < row.index.size(); ++k)
                E(r, jpos[static_cast<std::size_t>(row.index[k])]) += row.value[k];
            f[r] = rhs[rest[static_cast<std::size_t>(r)]];
        }
        Eigen::VectorXd s(nj);
        for (Eigen::Index k = 0; k < nj; ++k)
            s[k] = start[J[static_cast<std::size_t>(k)]];
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(E);
        cod.setThreshold(1e-11);
        Eigen::VectorXd xj = s + cod.solve(f - E * s);
        if ((E * xj - f).norm() > 1e-8 * (1.0 + f.norm()))
            return false;
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(E.transpose());
        qr.setThreshold(1e-11);
        const auto rank = qr.rank();
        Eigen::MatrixXd Q = qr.householderQ();
        Eigen::MatrixXd Nb = Q.rightCols(nj - rank);
        for (Eigen::Index k = 0; k < nj; ++k)
        {
            const int i = J[static_cast<std::size_t>(k)];
            map.constant[i] = xj[k];
            for (Eigen::Index c = 0; c < Nb.cols(); ++c)
                if (Nb(k, c) != 0.0)
                    map.coef[static_cast<std::size_t>(i)].emplace_back(z + static_cast<int>(c), Nb(k, c));
        }
        z += static_cast<int>(Nb.cols());
    }
    map.reduced = z;

    // pivot variables expressed through the others
    for (std::size_t r = 0; r < rows.size(); ++r)
    {
        const int piv = pivot_of_row[r];
        if (piv < 0)
            continue;
        double apiv = 0.0;
        for (std::size_t k = 0; k < rows[r].index.size(); ++k)
            if (rows[r].index[k] == piv)
                apiv = rows[r].value[k];
        std::map<int, double> acc;
        double constant = rhs[r] / apiv;
        for (std::size_t k = 0; k < rows[r].index.size(); ++k)
        {
            const int i = rows[r].index[k];
            if (i == piv)
                continue;
            const double w = -rows[r].value[k] / apiv;
            constant += w * map.constant[i];
            for (auto [zz, c] : map.coef[static_cast<std::size_t>(i)])
                acc[zz] += w * c;
        }
        map.constant[piv] = constant;
        for (auto [zz, c] : acc)
            if (c != 0.0)
                map.coef[static_cast<std::size_t>(piv)].emplace_back(zz, c);
    }
    return true;
}

Block make_block(Kind kind, const std::vector<ReducedRow> &rows, const std::vector<double> &offsets,
                 const ReducedRow *axis, double axis_offset, bool phase1, int s_index)
{
    Block b;
    b.kind = kind;
    std::vector<int> sup;
    for (const auto &r : rows)
        for (auto [z, c] : r.terms)
            sup.push_back(z);
    if (axis)
        for (auto [z, c] : axis->terms)
            sup.push_back(z);
    if (phase1)
        sup.push_back(s_index);
    std::sort(sup.begin(), sup.end());
    sup.erase(std::unique(sup.begin(), sup.end()), sup.end());
    b.support = sup;
    auto local = [&](int z) {
        return static_cast<Eigen::Index>(std::lower_bound(sup.begin(), sup.end(), z) - sup.begin());
    };
    const auto k = static_cast<Eigen::Index>(sup.size());
    const auto m = static_cast<Eigen::Index>(rows.size());
    b.rows = Eigen::MatrixXd::Zero(m, k);
    b.offsets.resize(m);
    for (Eigen::Index r = 0; r < m; ++r)
    {
        for (auto [z, c] : rows[static_cast<std::size_t>(r)].terms)
            b.rows(r, local(z)) += c;
        b.offsets[r] = rows[static_cast<std::size_t>(r)].constant + offsets[static_cast<std::size_t>(r)];
        if (phase1 && kind != Kind::cone)
            b.rows(r, local(s_index)) -= 1.0;
    }
    if (axis)
    {
        b.axis = Eigen::VectorXd::Zero(k);
        for (auto [z, c] : axis->terms)
            b.axis[local(z)] += c;
        b.axis_offset = axis->constant + axis_offset;
        if (phase1)
            b.axis[local(s_index)] += 1.0;
    }
    b.theta = kind == Kind::cone ? 2.0 : 1.0;
    return b;
}

struct Reduced
{
    AffineMap map;
    std::vector<Block> blocks;
    Eigen::VectorXd cost;
    double cost_constant = 0.0;
};

std::vector<Block> build_blocks(const ConvexProgram &p, const AffineMap &map, bool phase1)
{
    const int s_index = map.reduced;
    const int nz = map.reduced + (phase1 ? 1 : 0);
    std::vector<double> scratch(static_cast<std::size_t>(nz), 0.0);
    std::vector<int> touched;
    std::vector<Block> blocks;
    for (const auto &l : p.linear())
    {
        std::vector<ReducedRow> rows{reduce_row(l.a, map, scratch, touched)};
        if (rows[0].terms.empty() && !phase1)
        {
            if (rows[0].constant - l.b >= 0.0)
            {
                // constant constraint that fails: keep it so that feasibility checks see it
            }
            else
                continue;
        }
        blocks.push_back(make_block(Kind::linear, rows, {-l.b}, nullptr, 0.0, phase1, s_index));
    }
    for (const auto &l : p.log_sum_exp())
    {
        std::vector<ReducedRow> rows;
        for (const auto &r : l.rows)
            rows.push_back(reduce_row(r, map, scratch, touched));
        blocks.push_back(make_block(Kind::lse, rows, l.offsets, nullptr, 0.0, phase1, s_index));
    }
    for (const auto &c : p.cones())
    {
        std::vector<ReducedRow> rows;
        for (const auto &r : c.rows)
            rows.push_back(reduce_row(r, map, scratch, touched));
        const ReducedRow axis = reduce_row(c.axis, map, scratch, touched);
        blocks.push_back(make_block(Kind::cone, rows, c.offsets, &axis, c.axis_offset, phase1, s_index));
    }
    for (const auto &m : p.lmis())
    {
        Block b;
        b.kind = Kind::lmi;
        b.mat0 = m.constant;
        std::map<int, Eigen::MatrixXcd> acc;
        for (std::size_t k = 0; k < m.vars.size(); ++k)
        {
            const int v = m.vars[k];
            b.mat0 += map.constant[v] * m.mats[k];
            for (auto [z, c] : map.coef[static_cast<std::size_t>(v)])
            {
                auto it = acc.find(z);
                if (it == acc.end())
                    acc.emplace(z, c * m.mats[k]);
                else
                    it->second += c * m.mats[k];
            }
        }
        if (phase1)
            acc.emplace(s_index, Eigen::MatrixXcd::Identity(m.constant.rows(), m.constant.cols()));
        for (auto &[z, M] : acc)
        {
            b.support.push_back(z);
            b.mats.push_back(M);
        }
        b.theta = static_cast<double>(m.constant.rows());
        blocks.push_back(std::move(b));
    }
    return blocks;
}

void add_box(std::vector<Block> &blocks, const Eigen::VectorXd &center, double radius)
{
    for (int k = 0; k < static_cast<int>(center.size()); ++k)
    {
        ReducedRow up;
        up.terms.emplace_back(k, 1.0);
        blocks.push_back(make_block(Kind::linear, {up}, {-(center[k] + radius)}, nullptr, 0.0, false, 0));
        ReducedRow lo;
        lo.terms.emplace_back(k, -1.0);
        blocks.push_back(make_block(Kind::linear, {lo}, {center[k] - radius}, nullptr, 0.0, false, 0));
    }
}

} // namespace

InteriorPointResult solve_interior_point(const ConvexProgram &program, const InteriorPointOptions &options,
                                         const Eigen::VectorXd *start)
{
    InteriorPointResult result;
    const int n = program.num_vars();
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(n);
    if (start)
    {
        if (start->size() != n)
            throw std::invalid_argument("solve_interior_point: start has wrong dimension");
        x0 = *start;
    }

    AffineMap map;
    if (!eliminate_equalities(program, x0, map))
    {
        result.status = SolveStatus::infeasible;
        result.message = "inconsistent equality constraints";
        return result;
    }
    auto lift = [&](const Eigen::VectorXd &z) {
        Eigen::VectorXd x = map.constant;
        for (int i = 0; i < n; ++i)
            for (auto [zz, c] : map.coef[static_cast<std::size_t>(i)])
                x[i] += c * z[zz];
        return x;
    };

    const int nz = map.reduced;
    Eigen::VectorXd cost = Eigen::VectorXd::Zero(std::max(nz, 1));
    double cost_constant = 0.0;
    for (int i = 0; i < n; ++i)
    {
        cost_constant += program.objective()[i] * map.constant[i];
        for (auto [zz, c] : map.coef[static_cast<std::size_t>(i)])
            cost[zz] += program.objective()[i] * c;
    }

    // initial reduced point: identity-mapped variables keep their start values
    Eigen::VectorXd z0 = Eigen::VectorXd::Zero(std::max(nz, 1));
    for (int i = 0; i < n; ++i)
    {
        const auto &cf = map.coef[static_cast<std::size_t>(i)];
        if (cf.size() == 1 && cf[0].second == 1.0 && map.constant[i] == 0.0)
            z0[cf[0].first] = x0[i];
    }

    if (nz == 0)
    {
        // fully determined by equalities
        Eigen::VectorXd x = map.constant;
        const double viol = program.max_violation(x);
        result.x = x;
        result.objective = program.objective().dot(x);
        result.status = viol <= 1e-9 ? SolveStatus::optimal : SolveStatus::infeasible;
        return result;
    }

    int steps = 0;
    const double radius = options.box_radius * (1.0 + z0.lpNorm<Eigen::Infinity>());
    auto blocks2 = build_blocks(program, map, false);
    add_box(blocks2, z0, radius);
    Engine phase2(nz, std::move(blocks2), cost);
    Eigen::VectorXd z = z0;

    if (!phase2.strictly_feasible(z))
    {
        // phase I: minimize s subject to every constraint relaxed by s. A tight box comes
        // first so that variables the relaxation leaves free do not drift far from the start.
        enum class PhaseOne
        {
            found,
            infeasible,
            failure
        };
        std::string failure;
        auto phase_one = [&](double box) {
            const double viol = program.max_violation(lift(z0.head(nz)));
            Eigen::VectorXd zs(nz + 1);
            zs.head(nz) = z0.head(nz);
            zs[nz] = std::max(viol, 0.0) + 1.0;
            Eigen::VectorXd c1 = Eigen::VectorXd::Zero(nz + 1);
            c1[nz] = 1.0;
            auto blocks1 = build_blocks(program, map, true);
            add_box(blocks1, z0, box);
            {
                // s >= -1 so that the relaxed problem stays bounded along s
                ReducedRow lo;
                lo.terms.emplace_back(nz, -1.0);
                blocks1.push_back(make_block(Kind::linear, {lo}, {-1.0}, nullptr, 0.0, false, 0));
            }
            Engine phase1(nz + 1, std::move(blocks1), c1);
            for (int grow = 0; grow < 60 && !phase1.strictly_feasible(zs); ++grow)
                zs[nz] = 2.0 * zs[nz] + 1.0;
            if (!phase1.strictly_feasible(zs))
            {
                failure = "phase I could not find an interior start";
                return PhaseOne::failure;
            }
            double tau1 = 1.0;
            auto stop = [&](const Eigen::VectorXd &v) { return v[nz] < 0.0; };
            for (int outer = 0; outer < 80; ++outer)
            {
                bool stopped = false;
                const bool ok = phase1.center(zs, tau1, options, steps, stop, stopped);
                if (stopped || zs[nz] < 0.0)
                {
                    z = zs.head(nz);
                    if (!phase2.strictly_feasible(z))
                    {
                        failure = "phase I point not interior";
                        return PhaseOne::failure;
                    }
                    return PhaseOne::found;
                }
                if (!ok)
                {
                    failure = "phase I Newton failure";
                    return PhaseOne::failure;
                }
                const double gap = phase1.theta() / tau1;
                if (zs[nz] - gap > 0.0 || gap < 1e-13)
                    break;
                tau1 *= options.barrier_growth;
            }
            z = zs.head(nz);
            return PhaseOne::infeasible;
        };
        const double local = std::min(radius, 10.0 * (1.0 + z0.lpNorm<Eigen::Infinity>()));
        PhaseOne r1 = phase_one(local);
        if (r1 != PhaseOne::found && local < radius)
            r1 = phase_one(radius);
        if (r1 == PhaseOne::failure)
        {
            result.status = SolveStatus::numerical_failure;
            result.message = failure;
            result.newton_steps = steps;
            return result;
        }
        if (r1 == PhaseOne::infeasible)
        {
            result.status = SolveStatus::infeasible;
            result.message = "no strictly feasible point";
            result.newton_steps = steps;
            result.x = lift(z);
            return result;
        }
    }

    double tau = 1.0;
    const double obj0 = std::abs(cost.dot(z) + cost_constant);
    if (obj0 > 1.0)
        tau = 1.0 / obj0;
    auto never = [](const Eigen::VectorXd &) { return false; };
    auto gap_scale = [&](const Eigen::VectorXd &v) {
        return options.relative_gap ? std::max(1.0, std::abs(cost.dot(v) + cost_constant)) : 1.0;
    };
    bool converged = false;
    for (int outer = 0; outer < 100; ++outer)
    {
        bool stopped = false;
        const bool ok = phase2.center(z, tau, options, steps, never, stopped);
        if (!ok)
        {
            // numerical trouble close to the optimum still returns the last interior point
            const double gap = phase2.theta() / tau;
            if (gap <= 1e3 * options.tolerance * gap_scale(z))
                converged = true;
            break;
        }
        const double gap = phase2.theta() / tau;
        if (gap <= options.tolerance * gap_scale(z))
        {
            converged = true;
            break;
        }
        tau *= options.barrier_growth;
    }
    result.x = lift(z);
    result.objective = program.objective().dot(result.x);
    result.newton_steps = steps;
    if (converged && (z - z0.head(nz)).lpNorm<Eigen::Infinity>() > 0.5 * radius)
    {
        result.status = SolveStatus::unbounded;
        result.message = "optimum pressed against the search box";
        return result;
    }
    result.status = converged ? SolveStatus::optimal : SolveStatus::numerical_failure;
    if (!converged)
        result.message = "barrier path did not reach the requested tolerance";
    return result;
}

} // namespace stripeplan::conic

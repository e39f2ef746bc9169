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

#include "stripeplan/clustering.hpp"

#include "stripeplan/conic/lp.hpp"
#include "stripeplan/conic/socp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace stripeplan::cluster
{

namespace
{

constexpr double tie_tol = 1e-9;

int row_argmax(const Eigen::MatrixXd &v, Eigen::Index i)
{
    const double best = v.row(i).maxCoeff();
    for (Eigen::Index u = 0; u < v.cols(); ++u)
        if (v(i, u) >= best - tie_tol)
            return static_cast<int>(u);
    return 0;
}

// Weighted min-max head for one stripe; nullopt-like flag when no hotspot carries weight
bool solve_head(const Eigen::Ref<const Eigen::VectorXd> &w, std::span<const Hotspot> hotspots, double b,
                double ceiling_h, double tol, Point3 &head, double &objective)
{
    std::vector<int> active;
    for (Eigen::Index i = 0; i < w.size(); ++i)
        if (w[i] > 0.0)
            active.push_back(static_cast<int>(i));
    if (active.empty())
        return false;

    // w_i |(s - c_i, e_i)| <= r  with  w_i = (eta_i v_i / e_i^b)^(1/(b+2)),  t = r^(b+2)
    conic::SecondOrderProgram p;
    p.objective = Eigen::Vector3d(0.0, 0.0, 1.0);
    Eigen::VectorXd start = Eigen::VectorXd::Zero(3);
    for (int i : active)
    {
        start[0] += hotspots[static_cast<std::size_t>(i)].center.x;
        start[1] += hotspots[static_cast<std::size_t>(i)].center.y;
    }
    start[0] /= static_cast<double>(active.size());
    start[1] /= static_cast<double>(active.size());
    double r0 = 0.0;
    for (int i : active)
    {
        const Hotspot &h = hotspots[static_cast<std::size_t>(i)];
        const double e = h.elevation(ceiling_h);
        const double wi = std::pow(h.density * w[i] / std::pow(e, b), 1.0 / (b + 2.0));
        conic::SecondOrderCone k;
        k.A = Eigen::MatrixXd::Zero(3, 3);
        k.A(0, 0) = wi;
        k.A(1, 1) = wi;
        k.b = Eigen::Vector3d(-wi * h.center.x, -wi * h.center.y, wi * e);
        k.c = Eigen::Vector3d(0.0, 0.0, 1.0);
        p.cones.push_back(std::move(k));
        r0 = std::max(r0, wi * std::sqrt(std::pow(start[0] - h.center.x, 2) + std::pow(start[1] - h.center.y, 2) + e * e));
    }
    start[2] = 1.5 * r0 + 1e-6;
    const auto sol = conic::solve_socp(p, tol, &start);
    if (sol.status != conic::SolveStatus::optimal)
        throw ClusterError(std::string("optimize_heads: cone solver returned ") + conic::to_string(sol.status));
    head = Point3{sol.x[0], sol.x[1], ceiling_h};
    objective = 0.0;
    for (int i : active)
        objective = std::max(objective, w[i] * loss_metric(head, hotspots[static_cast<std::size_t>(i)], b, ceiling_h));
    return true;
}

void check_hotspots(std::span<const Hotspot> hotspots, double ceiling_h)
{
    if (hotspots.empty())
        throw ClusterError("no hotspots");
    for (const auto &h : hotspots)
        if (!(h.elevation(ceiling_h) > 0.0))
            throw ClusterError("hotspot at or above the ceiling");
}

// Move hotspots into empty stripes: the worst-served hotspot from a stripe with
// at least two members goes to the empty one.
void repair_empty(Eigen::MatrixXd &v, std::span<const Point3> heads, std::span<const Hotspot> hotspots, double b,
                  double ceiling_h)
{
    const Eigen::Index K = v.rows(), U = v.cols();
    if (U > K)
        throw ClusterError("more stripes than hotspots; some cluster must stay empty");
    for (Eigen::Index u = 0; u < U; ++u)
    {
        if (v.col(u).sum() > 0.5)
            continue;
        Eigen::VectorXd count = v.colwise().sum().transpose();
        int pick = -1;
        double worst = -1.0;
        for (Eigen::Index i = 0; i < K; ++i)
        {
            const int owner = row_argmax(v, i);
            if (count[owner] < 1.5)
                continue;
            const double d = loss_metric(heads[static_cast<std::size_t>(owner)], hotspots[static_cast<std::size_t>(i)],
                                         b, ceiling_h);
            if (d > worst)
            {
                worst = d;
                pick = static_cast<int>(i);
            }
        }
        v.row(pick).setZero();
        v(pick, u) = 1.0;
    }
}

} // namespace

std::vector<int> ClusterSolution::labels() const
{
    std::vector<int> out(static_cast<std::size_t>(assignment.rows()));
    for (Eigen::Index i = 0; i < assignment.rows(); ++i)
        out[static_cast<std::size_t>(i)] = row_argmax(assignment, i);
    return out;
}

double loss_metric(const Point3 &head, const Hotspot &hotspot, double b, double ceiling_h)
{
    const double e = hotspot.elevation(ceiling_h);
    if (!(e > 0.0))
        throw ClusterError("loss_metric: hotspot at or above the ceiling");
    const double d = distance(head, hotspot.center);
    return hotspot.density * std::pow(d, b + 2.0) / std::pow(e, b);
}

Eigen::MatrixXd loss_matrix(std::span<const Point3> heads, std::span<const Hotspot> hotspots, double b,
                            double ceiling_h)
{
    Eigen::MatrixXd D(static_cast<Eigen::Index>(hotspots.size()), static_cast<Eigen::Index>(heads.size()));
    for (std::size_t i = 0; i < hotspots.size(); ++i)
        for (std::size_t u = 0; u < heads.size(); ++u)
            D(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(u)) =
                loss_metric(heads[u], hotspots[i], b, ceiling_h);
    return D;
}

double assignment_objective(const Eigen::MatrixXd &v, std::span<const Point3> heads,
                            std::span<const Hotspot> hotspots, double b, double ceiling_h)
{
    return v.cwiseProduct(loss_matrix(heads, hotspots, b, ceiling_h)).maxCoeff();
}

HeadsResult optimize_heads(const Eigen::MatrixXd &weights, std::span<const Hotspot> hotspots, double b,
                           double ceiling_h, double tol)
{
    check_hotspots(hotspots, ceiling_h);
    if (weights.rows() != static_cast<Eigen::Index>(hotspots.size()) || weights.cols() < 1)
        throw ClusterError("optimize_heads: weight matrix must be K x U");
    HeadsResult r;
    for (Eigen::Index u = 0; u < weights.cols(); ++u)
    {
        Point3 head;
        double obj = 0.0;
        if (!solve_head(weights.col(u), hotspots, b, ceiling_h, tol, head, obj))
            throw ClusterError("optimize_heads: cluster " + std::to_string(u) + " is empty");
        r.heads.push_back(head);
        r.cluster_objective.push_back(obj);
        r.objective = std::max(r.objective, obj);
    }
    return r;
}

RelaxedAssignment relax_assign(std::span<const Point3> heads, std::span<const Hotspot> hotspots, double b,
                               double ceiling_h)
{
    check_hotspots(hotspots, ceiling_h);
    if (heads.empty())
        throw ClusterError("relax_assign: no heads");
    const Eigen::MatrixXd Delta = loss_matrix(heads, hotspots, b, ceiling_h);
    const double scale = Delta.maxCoeff();
    const Eigen::MatrixXd D = Delta / scale;
    const int K = static_cast<int>(Delta.rows());
    const int U = static_cast<int>(Delta.cols());
    const int nv = K * U;
    auto idx = [U](int i, int u) { return i * U + u; };

    // min t  s.t.  D_{i,u} v_{i,u} <= t,  sum_u v_{i,u} = 1,  v >= 0
    conic::LinearProgram lp;
    lp.objective = Eigen::VectorXd::Zero(nv + 1);
    lp.objective[nv] = 1.0;
    lp.A_ub = Eigen::MatrixXd::Zero(nv, nv + 1);
    lp.b_ub = Eigen::VectorXd::Zero(nv);
    lp.A_eq = Eigen::MatrixXd::Zero(K, nv + 1);
    lp.b_eq = Eigen::VectorXd::Ones(K);
    for (int i = 0; i < K; ++i)
        for (int u = 0; u < U; ++u)
        {
            lp.A_ub(idx(i, u), idx(i, u)) = D(i, u);
            lp.A_ub(idx(i, u), nv) = -1.0;
            lp.A_eq(i, idx(i, u)) = 1.0;
        }
    lp.lower = Eigen::VectorXd::Zero(nv + 1);
    lp.upper = Eigen::VectorXd::Constant(nv + 1, std::numeric_limits<double>::infinity());
    const auto first = conic::solve_lp(lp);
    if (first.status != conic::SolveStatus::optimal)
        throw ClusterError(std::string("relax_assign: LP returned ") + conic::to_string(first.status));

    // Canonical point of the optimal face: least total loss with t held at its optimum
    conic::LinearProgram face;
    face.objective = Eigen::VectorXd::Zero(nv);
    face.A_ub = Eigen::MatrixXd::Zero(nv, nv);
    face.b_ub = Eigen::VectorXd::Constant(nv, first.value * (1.0 + 1e-9));
    face.A_eq = Eigen::MatrixXd::Zero(K, nv);
    face.b_eq = Eigen::VectorXd::Ones(K);
    for (int i = 0; i < K; ++i)
        for (int u = 0; u < U; ++u)
        {
            face.objective[idx(i, u)] = D(i, u);
            face.A_ub(idx(i, u), idx(i, u)) = D(i, u);
            face.A_eq(i, idx(i, u)) = 1.0;
        }
    face.lower = Eigen::VectorXd::Zero(nv);
    face.upper = Eigen::VectorXd::Constant(nv, std::numeric_limits<double>::infinity());
    const auto second = conic::solve_lp(face);
    const Eigen::VectorXd &x = second.status == conic::SolveStatus::optimal ? second.x : first.x;

    RelaxedAssignment r;
    r.v.resize(K, U);
    for (int i = 0; i < K; ++i)
    {
        double s = 0.0;
        for (int u = 0; u < U; ++u)
        {
            r.v(i, u) = std::max(0.0, x[idx(i, u)]);
            s += r.v(i, u);
        }
        r.v.row(i) /= s;
    }
    r.objective = r.v.cwiseProduct(Delta).maxCoeff();
    return r;
}

Eigen::MatrixXd project_assignment(const Eigen::MatrixXd &v)
{
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(v.rows(), v.cols());
    for (Eigen::Index i = 0; i < v.rows(); ++i)
        out(i, row_argmax(v, i)) = 1.0;
    return out;
}

ClusterSolution fac_ao(std::span<const Hotspot> hotspots, int U, const ClusterSolution &init, double b,
                       double ceiling_h, const FacAoOptions &options)
{
    check_hotspots(hotspots, ceiling_h);
    const auto K = static_cast<Eigen::Index>(hotspots.size());
    if (U < 1)
        throw ClusterError("fac_ao: U must be at least 1");
    if (init.assignment.rows() != K || init.assignment.cols() != U)
        throw ClusterError("fac_ao: initial assignment must be K x U");
    for (Eigen::Index i = 0; i < K; ++i)
        if (std::abs(init.assignment.row(i).sum() - 1.0) > 1e-9 || init.assignment.row(i).minCoeff() < 0.0)
            throw ClusterError("fac_ao: initial assignment rows must sum to one");

    ClusterSolution out;
    Eigen::MatrixXd v = init.assignment;
    std::vector<Point3> heads = init.heads;
    if (static_cast<int>(heads.size()) != U)
        heads.assign(static_cast<std::size_t>(U), Point3{0.0, 0.0, ceiling_h});

    const double inf = std::numeric_limits<double>::infinity();
    double t = 0.0;
    double t_prev = inf;
    double best = inf; // relaxed objective of the current (v, heads)
    for (int it = 0; it < options.max_iterations; ++it)
    {
        // heads for the current weights; stripes without weight keep their head
        std::vector<Point3> trial = heads;
        for (int u = 0; u < U; ++u)
        {
            Point3 h;
            double obj = 0.0;
            if (solve_head(v.col(u), hotspots, b, ceiling_h, 1e-10, h, obj))
                trial[static_cast<std::size_t>(u)] = h;
        }
        const double t_heads = assignment_objective(v, trial, hotspots, b, ceiling_h);
        if (t_heads <= best || it == 0)
        {
            heads = trial;
            best = t_heads;
        }
        t_prev = t;

        auto relaxed = relax_assign(heads, hotspots, b, ceiling_h);
        if (relaxed.objective <= best)
        {
            v = relaxed.v;
            best = relaxed.objective;
        }
        t = best;
        out.relaxed_history.push_back(t);
        out.iterations = it + 1;
        if (t_prev > 0.0 && std::abs(1.0 - t / t_prev) < options.epsilon)
            break;
    }

    out.assignment = project_assignment(v);
    repair_empty(out.assignment, heads, hotspots, b, ceiling_h);
    auto final_heads = optimize_heads(out.assignment, hotspots, b, ceiling_h);
    out.heads = std::move(final_heads.heads);
    out.objective = assignment_objective(out.assignment, out.heads, hotspots, b, ceiling_h);
    return out;
}

double chebyshev_distance(const Point3 &a, const Point3 &b)
{
    return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

ClusterSolution chebyshev_cluster(std::span<const Hotspot> hotspots, int U, double b, double ceiling_h,
                                  std::uint64_t seed, int max_iter)
{
    check_hotspots(hotspots, ceiling_h);
    const int K = static_cast<int>(hotspots.size());
    if (U < 1 || U > K)
        throw ClusterError("chebyshev_cluster: need 1 <= U <= K");

    // Forgy seeding: U distinct hotspots as initial heads
    std::mt19937_64 rng(seed);
    std::vector<int> order(static_cast<std::size_t>(K));
    std::iota(order.begin(), order.end(), 0);
    for (int k = 0; k < U; ++k)
    {
        std::uniform_int_distribution<int> pick(k, K - 1);
        std::swap(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(pick(rng))]);
    }
    std::vector<Point3> heads;
    for (int k = 0; k < U; ++k)
    {
        const Point3 &c = hotspots[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])].center;
        heads.push_back({c.x, c.y, ceiling_h});
    }

    ClusterSolution out;
    std::vector<int> label(static_cast<std::size_t>(K), -1);
    auto radius = [&]() {
        double r = 0.0;
        for (int i = 0; i < K; ++i)
            r = std::max(r, chebyshev_distance(hotspots[static_cast<std::size_t>(i)].center,
                                               heads[static_cast<std::size_t>(label[static_cast<std::size_t>(i)])]));
        return r;
    };
    for (int it = 0; it < max_iter; ++it)
    {
        std::vector<int> next(static_cast<std::size_t>(K));
        for (int i = 0; i < K; ++i)
        {
            int arg = 0;
            double best = std::numeric_limits<double>::infinity();
            for (int u = 0; u < U; ++u)
            {
                const double d = chebyshev_distance(hotspots[static_cast<std::size_t>(i)].center,
                                                    heads[static_cast<std::size_t>(u)]);
                if (d < best - 1e-12)
                {
                    best = d;
                    arg = u;
                }
            }
            next[static_cast<std::size_t>(i)] = arg;
        }
        // keep every cluster populated: an empty stripe takes the farthest hotspot of a shared cluster
        for (int u = 0; u < U; ++u)
        {
            if (std::count(next.begin(), next.end(), u) > 0)
                continue;
            int pick = -1;
            double far = -1.0;
            for (int i = 0; i < K; ++i)
            {
                const int owner = next[static_cast<std::size_t>(i)];
                if (std::count(next.begin(), next.end(), owner) < 2)
                    continue;
                const double d = chebyshev_distance(hotspots[static_cast<std::size_t>(i)].center,
                                                    heads[static_cast<std::size_t>(owner)]);
                if (d > far)
                {
                    far = d;
                    pick = i;
                }
            }
            next[static_cast<std::size_t>(pick)] = u;
        }
        const bool fixed = next == label;
        label = next;
        out.iterations = it + 1;
        if (fixed)
            break;
        // Chebyshev 1-center: midpoint of the horizontal bounding box
        for (int u = 0; u < U; ++u)
        {
            double x0 = std::numeric_limits<double>::infinity(), y0 = x0, x1 = -x0, y1 = -x0;
            for (int i = 0; i < K; ++i)
            {
                if (label[static_cast<std::size_t>(i)] != u)
                    continue;
                const Point3 &c = hotspots[static_cast<std::size_t>(i)].center;
                x0 = std::min(x0, c.x);
                x1 = std::max(x1, c.x);
                y0 = std::min(y0, c.y);
                y1 = std::max(y1, c.y);
            }
            heads[static_cast<std::size_t>(u)] = Point3{0.5 * (x0 + x1), 0.5 * (y0 + y1), ceiling_h};
        }
        out.chebyshev_history.push_back(radius());
    }

    out.assignment = Eigen::MatrixXd::Zero(K, U);
    for (int i = 0; i < K; ++i)
        out.assignment(i, label[static_cast<std::size_t>(i)]) = 1.0;
    out.heads = heads;
    out.objective = assignment_objective(out.assignment, out.heads, hotspots, b, ceiling_h);
    return out;
}

ClusterSolution random_assignment(std::span<const Hotspot> hotspots, int U, double b, double ceiling_h,
                                  std::uint64_t seed)
{
    check_hotspots(hotspots, ceiling_h);
    const int K = static_cast<int>(hotspots.size());
    if (U < 1 || U > K)
        throw ClusterError("random_assignment: need 1 <= U <= K");
    std::mt19937_64 rng(seed);
    std::vector<int> order(static_cast<std::size_t>(K));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::uniform_int_distribution<int> stripe(0, U - 1);
    ClusterSolution out;
    out.assignment = Eigen::MatrixXd::Zero(K, U);
    // first U shuffled hotspots seed one stripe each, the rest are uniform
    for (int k = 0; k < K; ++k)
        out.assignment(order[static_cast<std::size_t>(k)], k < U ? k : stripe(rng)) = 1.0;
    auto h = optimize_heads(out.assignment, hotspots, b, ceiling_h);
    out.heads = std::move(h.heads);
    out.objective = h.objective;
    return out;
}

} // namespace stripeplan::cluster

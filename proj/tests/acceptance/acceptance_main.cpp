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

// Acceptance suite. Prints one PASS/FAIL line per criterion.
//
//   stripeplan_acceptance [--only 1,4,9] [--known-fail 8] [--configs DIR]
//
// Exit status is 0 when every selected criterion passes or is listed in --known-fail.

#include "stripeplan/beamforming.hpp"
#include "stripeplan/channel.hpp"
#include "stripeplan/clustering.hpp"
#include "stripeplan/conic/appendix.hpp"
#include "stripeplan/conic/gp.hpp"
#include "stripeplan/conic/lp.hpp"
#include "stripeplan/conic/monomial.hpp"
#include "stripeplan/conic/socp.hpp"
#include "stripeplan/deployment/deploy.hpp"
#include "stripeplan/evaluation.hpp"
#include "stripeplan/experiment.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#ifndef STRIPEPLAN_CONFIG_DIR
#define STRIPEPLAN_CONFIG_DIR "configs"
#endif

using namespace stripeplan;

namespace
{

struct Outcome
{
    bool pass = false;
    std::string detail;
};

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

int hardware_workers()
{
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

std::filesystem::path config_dir = STRIPEPLAN_CONFIG_DIR;

// ---------------------------------------------------------------- 1

double brute_gain(const std::vector<Point3> &g, const Point3 &c, double b, double hc, double lambda)
{
    double sum = 0.0;
    for (const auto &q : g)
    {
        const double dx = q.x - c.x, dy = q.y - c.y, dz = hc - c.z;
        const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
        const double a = lambda / (4.0 * pi * d);
        sum += 2.0 * (b + 1.0) * std::pow(dz / d, b) * a * a;
    }
    return sum;
}

Outcome physics_oracle()
{
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> xy(0.0, 25.0), z(0.5, 1.5), b(0.0, 10.0), f(1e9, 30e9);
    std::uniform_int_distribution<int> n(1, 64);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k)
    {
        StripeLayout L;
        L.kappa = 0.005;
        const int N = n(rng);
        for (int j = 0; j < N; ++j)
            L.elements.push_back({xy(rng), xy(rng), 5.0});
        const Point3 c{xy(rng), xy(rng), z(rng)};
        const double bb = b(rng), lambda = speed_of_light / f(rng);
        const double exact = brute_gain(L.elements, c, bb, 5.0, lambda);
        worst = std::max(worst, std::abs(channel_gain_sq(L, c, bb, 5.0, lambda) - exact) / exact);
    }
    return {worst <= 1e-12, "1000 instances, max rel err " + fmt(worst)};
}

// ---------------------------------------------------------------- 2

double log_slope(const std::function<double(std::vector<double>)> &f, std::vector<double> v, std::size_t l)
{
    const double h = 1e-5;
    const double v0 = v[l];
    v[l] = v0 * std::exp(h);
    const double up = std::log(f(v));
    v[l] = v0 * std::exp(-h);
    const double dn = std::log(f(v));
    return (up - dn) / (2.0 * h);
}

Outcome monomial_check()
{
    using namespace stripeplan::conic;
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> u(0.5, 6.0), z(0.8, 1.2), bd(0.5, 6.0);
    double value_err = 0.0, slope_err = 0.0;
    int tabulated_hotspot = 0, tabulated_distance = 0, tabulated_pair = 0;
    auto differs = [](double a, double b) { return std::abs(a - b) > 1e-9 * std::max(std::abs(a), std::abs(b)); };
    auto track = [&](double got, double want, double &worst, bool relative) {
        worst = std::max(worst, relative ? std::abs(got - want) / std::abs(want) : std::abs(got - want));
    };
    for (int k = 0; k < 100; ++k)
    {
        // generic path on a random posynomial
        const std::vector<double> v0{u(rng), u(rng), u(rng)};
        const double c1 = u(rng), c2 = u(rng), a1 = bd(rng), a2 = -bd(rng);
        auto posy = [=](std::span<const double> v) {
            return c1 * std::pow(v[0], a1) * v[1] + c2 * std::pow(v[2], a2) / v[1] + 1.0;
        };
        const auto m = monomial_approx(posy, v0);
        track(m(v0), posy(v0), value_err, true);
        auto fp = [&](std::vector<double> v) { return posy(v); };
        for (std::size_t l = 0; l < 3; ++l)
            track(m.exponents[l], log_slope(fp, v0, l), slope_err, false);

        const double b = bd(rng);
        std::vector<double> d(5);
        for (auto &x : d)
            x = u(rng);
        const auto hs = hotspot_surrogate(d, b, ExponentConvention::derived);
        track(hs.value, hotspot_source(d, b), value_err, true);
        auto fh = [&](std::vector<double> v) { return hotspot_source(v, b); };
        for (std::size_t l = 0; l < d.size(); ++l)
            track(hs.beta_hat[l], log_slope(fh, d, l), slope_err, false);
        const auto hp = hotspot_surrogate(d, b, ExponentConvention::tabulated);
        tabulated_hotspot += differs(hp.beta_hat[0], hs.beta_hat[0]);

        const Point3 g{u(rng), u(rng), 5.0}, c{u(rng), u(rng), z(rng)};
        const double dd = distance(g, c) * 1.3;
        const auto ds = distance_surrogate(g, c, dd, ExponentConvention::derived);
        track(ds.value, distance_source(g, c, dd), value_err, true);
        auto fd = [&](std::vector<double> v) { return distance_source({v[1], v[2], g.z}, c, v[0]); };
        const std::vector<double> pd{dd, g.x, g.y};
        track(ds.beta_tilde, log_slope(fd, pd, 0), slope_err, false);
        track(ds.beta_bar[0], log_slope(fd, pd, 1), slope_err, false);
        track(ds.beta_bar[1], log_slope(fd, pd, 2), slope_err, false);
        const auto dp = distance_surrogate(g, c, dd, ExponentConvention::tabulated);
        tabulated_distance += differs(dp.beta_tilde, ds.beta_tilde) || differs(dp.beta_bar[0], ds.beta_bar[0]) ||
                            differs(dp.beta_bar[1], ds.beta_bar[1]);

        const Point3 a{u(rng), u(rng), 5.0}, e{u(rng), u(rng), 5.0};
        const double al = horizontal_distance(a, e);
        const auto ps = pair_surrogate(a, e, al, ExponentConvention::derived);
        track(ps.h_prime, pair_lhs_source(a, e, al), value_err, true);
        track(ps.h_bar, pair_rhs_source(a, e, al), value_err, true);
        const std::vector<double> pp{al, a.x, a.y, e.x, e.y};
        auto fl = [&](std::vector<double> v) { return pair_lhs_source({v[1], v[2], 5.0}, {v[3], v[4], 5.0}, v[0]); };
        auto fr = [&](std::vector<double> v) { return pair_rhs_source({v[1], v[2], 5.0}, {v[3], v[4], 5.0}, v[0]); };
        const double lhs_b[5] = {ps.beta_prime, ps.tau[0], ps.tau[1], ps.tau_prime[0], ps.tau_prime[1]};
        const double rhs_b[5] = {ps.tau_hat, ps.tau_bar[0], ps.tau_bar[1], ps.tau_tilde[0], ps.tau_tilde[1]};
        for (std::size_t l = 0; l < 5; ++l)
        {
            track(lhs_b[l], log_slope(fl, pp, l), slope_err, false);
            track(rhs_b[l], log_slope(fr, pp, l), slope_err, false);
        }
        const auto pq = pair_surrogate(a, e, al, ExponentConvention::tabulated);
        bool pair_differs = differs(pq.beta_prime, ps.beta_prime) || differs(pq.tau_hat, ps.tau_hat);
        for (std::size_t l = 0; l < 2; ++l)
            pair_differs = pair_differs || differs(pq.tau[l], ps.tau[l]) || differs(pq.tau_prime[l], ps.tau_prime[l]) ||
                           differs(pq.tau_bar[l], ps.tau_bar[l]) || differs(pq.tau_tilde[l], ps.tau_tilde[l]);
        tabulated_pair += pair_differs;
    }
    return {value_err <= 1e-10 && slope_err <= 1e-6,
            "generic + 3 surrogate families x 100 points: value err " + fmt(value_err) + ", log-gradient err " +
                fmt(slope_err) + "; tabulated exponents differ from the derived ones at hotspot " +
                std::to_string(tabulated_hotspot) + "/100, distance " + std::to_string(tabulated_distance) +
                "/100, pair " + std::to_string(tabulated_pair) + "/100 points"};
}

// ---------------------------------------------------------------- 3

Outcome solver_kernel()
{
    using namespace stripeplan::conic;
    const double inf = std::numeric_limits<double>::infinity();
    double worst = 0.0;
    int bad_status = 0;
    auto check = [&](const auto &s, double want) {
        if (s.status != SolveStatus::optimal)
        {
            ++bad_status;
            return;
        }
        worst = std::max(worst, std::abs(s.value - want) / std::max(1.0, std::abs(want)));
    };

    {
        LinearProgram p; // max t s.t. t <= 2x, t <= 2 - 2x, 0 <= x <= 1
        p.objective = Eigen::Vector2d(1, 0);
        p.maximize = true;
        p.A_ub.resize(2, 2);
        p.A_ub << 1, -2, 1, 2;
        p.b_ub = Eigen::Vector2d(0, 2);
        p.lower = Eigen::Vector2d(-inf, 0);
        p.upper = Eigen::Vector2d(inf, 1);
        check(solve_lp(p), 1.0);
    }
    {
        LinearProgram p; // min x + 2y s.t. x + y = 3, 0 <= x <= 2, y >= 0
        p.objective = Eigen::Vector2d(1, 2);
        p.A_eq = Eigen::RowVector2d(1, 1);
        p.b_eq = Eigen::VectorXd::Constant(1, 3.0);
        p.lower = Eigen::Vector2d(0, 0);
        p.upper = Eigen::Vector2d(2, inf);
        check(solve_lp(p), 4.0);
    }
    {
        LinearProgram p; // max x s.t. x <= -1, x free
        p.objective = Eigen::VectorXd::Ones(1);
        p.maximize = true;
        p.A_ub = Eigen::MatrixXd::Ones(1, 1);
        p.b_ub = -Eigen::VectorXd::Ones(1);
        check(solve_lp(p), -1.0);
    }
    auto circle = [&](const std::vector<std::array<double, 2>> &pts) {
        SecondOrderProgram p;
        p.objective = Eigen::Vector3d(0, 0, 1);
        for (const auto &q : pts)
        {
            SecondOrderCone c;
            c.A = Eigen::MatrixXd::Zero(2, 3);
            c.A(0, 0) = 1.0;
            c.A(1, 1) = 1.0;
            c.b = Eigen::Vector2d(-q[0], -q[1]);
            c.c = Eigen::Vector3d(0, 0, 1);
            p.cones.push_back(c);
        }
        return solve_socp(p);
    };
    check(circle({{0, 0}, {2, 0}}), 1.0);
    check(circle({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0}}), 1.0 / std::sqrt(3.0));
    check(circle({{0, 0}, {4, 0}, {0, 4}, {4, 4}}), std::sqrt(8.0));
    {
        GeometricProgram p; // max t s.t. t / x <= 1, x <= 2
        p.num_vars = 2;
        p.inequalities.push_back({Posynomial{{Monomial{1.0, {}}.pow(0, 1.0).pow(1, -1.0)}}, Monomial{1.0, {}}});
        p.lower = {0.0, 0.0};
        p.upper = {inf, 2.0};
        check(solve_gp(p), 2.0);
    }
    {
        GeometricProgram p; // max t s.t. t x <= 1, t / x <= 1
        p.num_vars = 2;
        p.inequalities.push_back({Posynomial{{Monomial{1.0, {}}.pow(0, 1.0).pow(1, 1.0)}}, Monomial{1.0, {}}});
        p.inequalities.push_back({Posynomial{{Monomial{1.0, {}}.pow(0, 1.0).pow(1, -1.0)}}, Monomial{1.0, {}}});
        check(solve_gp(p), 1.0);
    }
    {
        GeometricProgram p; // max t s.t. t <= x, t <= y, x + y <= 1
        p.num_vars = 3;
        p.inequalities.push_back({Posynomial{{Monomial{1.0, {}}.pow(0, 1.0)}}, Monomial{1.0, {}}.pow(1, 1.0)});
        p.inequalities.push_back({Posynomial{{Monomial{1.0, {}}.pow(0, 1.0)}}, Monomial{1.0, {}}.pow(2, 1.0)});
        p.inequalities.push_back(
            {Posynomial{{Monomial{1.0, {}}.pow(1, 1.0), Monomial{1.0, {}}.pow(2, 1.0)}}, Monomial{1.0, {}}});
        check(solve_gp(p), 0.5);
    }
    return {bad_status == 0 && worst <= 1e-6,
            "3 LP, 3 SOCP, 3 GP instances: max rel err " + fmt(worst) + ", non-optimal statuses " +
                std::to_string(bad_status)};
}

// ---------------------------------------------------------------- 4

Outcome clustering_trends()
{
    using namespace stripeplan::cluster;
    const double hc = 5.0, b = 2.0;
    const int runs = 50;
    int monotone_fail = 0, strictly_lower = 0, total = 0;
    std::vector<double> fac_avg, cheb_avg;
    bool avg_ok = true;
    for (int U = 2; U <= 6; ++U)
    {
        double fac = 0.0, cheb = 0.0;
        for (int s = 0; s < runs; ++s)
        {
            const auto seed = static_cast<std::uint64_t>(1000 + s);
            const auto hs = generate_hotspots(25.0, 25.0, hc, 25, {}, seed);
            const auto init = chebyshev_cluster(hs, U, b, hc, mix_seed(seed, 2));
            const auto sol = fac_ao(hs, U, init, b, hc);
            for (std::size_t k = 1; k < sol.relaxed_history.size(); ++k)
                if (sol.relaxed_history[k] > sol.relaxed_history[k - 1] + 1e-9)
                {
                    ++monotone_fail;
                    break;
                }
            fac += sol.objective;
            cheb += init.objective;
            strictly_lower += sol.objective < init.objective;
            ++total;
        }
        fac_avg.push_back(fac / runs);
        cheb_avg.push_back(cheb / runs);
        avg_ok = avg_ok && fac_avg.back() <= cheb_avg.back();
    }
    bool nonincreasing = true;
    for (std::size_t k = 1; k < fac_avg.size(); ++k)
        nonincreasing = nonincreasing && fac_avg[k] <= fac_avg[k - 1];
    std::string curve;
    for (std::size_t k = 0; k < fac_avg.size(); ++k)
        curve += (k ? " " : "") + fmt(fac_avg[k]) + "/" + fmt(cheb_avg[k]);
    const bool strict_ok = 2 * strictly_lower >= total;
    return {monotone_fail == 0 && avg_ok && strict_ok && nonincreasing,
            "(a) non-monotone runs " + std::to_string(monotone_fail) + "/" + std::to_string(total) +
                "; (b) FAC-AO/Chebyshev avg max-loss U=2..6: " + curve + ", strictly lower in " +
                std::to_string(strictly_lower) + "/" + std::to_string(total) + "; (c) non-increasing in U: " +
                (nonincreasing ? "yes" : "no")};
}

// ---------------------------------------------------------------- 5

Outcome clustering_brute_force()
{
    using namespace stripeplan::cluster;
    const double hc = 5.0;
    int violations = 0;
    double margin = std::numeric_limits<double>::infinity();
    for (int s = 0; s < 20; ++s)
    {
        const auto hs = generate_hotspots(25.0, 25.0, hc, 6, {}, static_cast<std::uint64_t>(500 + s));
        double best = std::numeric_limits<double>::infinity();
        std::vector<Point3> best_heads;
        for (int code = 1; code < (1 << 6) - 1; ++code)
        {
            Eigen::MatrixXd v = Eigen::MatrixXd::Zero(6, 2);
            for (int i = 0; i < 6; ++i)
                v(i, (code >> i) & 1) = 1.0;
            const auto h = optimize_heads(v, hs, 2.0, hc);
            if (h.objective < best)
            {
                best = h.objective;
                best_heads = h.heads;
            }
        }
        const double relaxed = relax_assign(best_heads, hs, 2.0, hc).objective;
        violations += relaxed > best + 1e-9;
        margin = std::min(margin, (best - relaxed) / best);
    }
    return {violations == 0, "20 instances, violations " + std::to_string(violations) +
                                 ", smallest relative gap to exhaustive " + fmt(margin)};
}

// ---------------------------------------------------------------- 6

Outcome mapping_feasibility()
{
    const double kappa = 0.015;
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> u(-1.0, 1.0), pos(1.0, 24.0);
    int ok = 0;
    double worst_consecutive = 0.0, worst_pairwise = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 100; ++k)
    {
        const double cx = pos(rng), cy = pos(rng);
        std::vector<Point3> raw;
        while (raw.size() < 20)
        {
            const double x = u(rng), y = u(rng);
            if (x * x + y * y <= 1.0)
                raw.push_back({cx + x * kappa / 4, cy + y * kappa / 4, 5.0});
        }
        const auto r = deploy::map_to_feasible(raw, kappa);
        const auto rep = spacing_report(r.layout);
        worst_consecutive = std::max(worst_consecutive, rep.max_consecutive_error);
        worst_pairwise = std::min(worst_pairwise, rep.min_pairwise);
        ok += rep.max_consecutive_error <= 1e-9 && rep.min_pairwise >= kappa - 1e-9;
    }
    return {ok == 100, std::to_string(ok) + "/100 feasible, max |spacing - kappa| " + fmt(worst_consecutive) +
                           ", min pairwise " + fmt(worst_pairwise)};
}

// ---------------------------------------------------------------- 7

Outcome deployment_convergence()
{
    const double f = 10e9, kappa = 0.5 * speed_of_light / f;
    const std::vector<std::string> methods{"sgp", "sca", "polygon", "line"};
    std::map<std::string, int> reached;
    std::map<std::string, double> seconds;
    const int seeds = 20;
    for (int s = 0; s < seeds; ++s)
    {
        // five hotspots inside a 4 x 4 m patch
        auto hs = generate_hotspots(4.0, 4.0, 5.0, 5, {}, static_cast<std::uint64_t>(700 + s));
        for (auto &h : hs)
        {
            h.center.x += 10.0;
            h.center.y += 10.0;
        }
        deploy::DeploymentProblem p;
        p.hotspots = hs;
        p.N = 24;
        p.kappa = kappa;
        p.b = 2.0;
        p.budget = 0.2;
        p.ceiling_h = 5.0;
        const auto head =
            cluster::optimize_heads(Eigen::MatrixXd::Ones(5, 1), hs, p.b, p.ceiling_h).heads.front();
        deploy::DeployOptions o;
        o.max_iterations = 50;
        for (const auto &m : methods)
        {
            const auto t0 = std::chrono::steady_clock::now();
            const auto r = deploy::deploy(m, p, head, o);
            seconds[m] += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            bool hit = r.converged && r.iterations <= 50;
            // an accepted step with |1 - t / t'| <= 1e-6 also counts
            for (std::size_t k = 1; k < r.history.size() && k <= 50 && !hit; ++k)
                hit = std::abs(1.0 - r.history[k] / r.history[k - 1]) <= 1e-6;
            reached[m] += hit;
        }
    }
    bool pass = true;
    std::string detail;
    for (const auto &m : methods)
    {
        pass = pass && reached[m] * 100 >= 95 * seeds;
        detail += (detail.empty() ? "" : ", ") + m + " " + std::to_string(reached[m]) + "/" +
                  std::to_string(seeds) + " (" + fmt(seconds[m]) + " s)";
    }
    return {pass, detail};
}

// ---------------------------------------------------------------- 8, 9, 12 helpers

exp::ExperimentConfig base_config()
{
    auto c = exp::parse_config(R"({"scenario": "scenario_25x25.json", "hotspot_count": 25, "stripes": 5,
                                    "clustering": "fac_ao", "radius": 0.5, "draws": 20})",
                               config_dir);
    c.workers = hardware_workers();
    return c;
}

// mean over seeds of the per-seed mean min power, keyed by (value, method, precoder)
std::map<std::tuple<double, std::string, std::string>, double> curve(const std::vector<exp::ResultRow> &rows,
                                                                     int &failures)
{
    std::map<std::tuple<double, std::string, std::string>, std::pair<double, int>> acc;
    for (const auto &r : rows)
    {
        if (!r.min_power_w)
        {
            ++failures;
            continue;
        }
        auto &a = acc[{r.sweep_value, r.method, r.precoder}];
        a.first += *r.min_power_w;
        ++a.second;
    }
    std::map<std::tuple<double, std::string, std::string>, double> out;
    for (const auto &[k, a] : acc)
        out[k] = a.first / a.second;
    return out;
}

Outcome baseline_dominance()
{
    auto c = base_config();
    c.methods = deploy::method_names();
    c.precoders = {eval::PrecoderKind::mrt, eval::PrecoderKind::sdp};
    c.axis = exp::SweepAxis::frequency;
    c.values = {2e9, 6e9, 10e9};
    c.elements = 24;
    c.seeds = {1};
    c.validate();
    const auto report = exp::run_experiment(c);
    int failures = 0;
    const auto means = curve(report.rows, failures);
    int comparisons = 0, violations = 0, line_violations = 0;
    std::string first;
    for (double f : c.values)
        for (const std::string pc : {"mrt", "sdp"})
        {
            auto at = [&](const std::string &m) {
                const auto it = means.find({f, m, pc});
                return it == means.end() ? std::nan("") : it->second;
            };
            const double upa = at("center_upa"), rect = at("center_rectangle");
            for (const std::string m : {"sgp", "sca", "polygon", "line"})
            {
                comparisons += 2;
                const double v = at(m);
                const int bad = !(v >= upa) + !(v >= rect);
                violations += bad;
                if (bad && first.empty())
                    first = m + "/" + pc + " at " + fmt(f / 1e9) + " GHz: " + fmt(v) + " vs UPA " + fmt(upa) +
                            ", rectangle " + fmt(rect);
            }
            const double poly = at("polygon");
            line_violations += !(poly >= at("line") - 0.01 * poly);
        }
    std::string detail = "optimized >= baselines in " + std::to_string(comparisons - violations) + "/" +
                         std::to_string(comparisons) + " comparisons; polygon >= line (1%) in " +
                         std::to_string(6 - line_violations) + "/6; failed draws " + std::to_string(failures);
    if (!first.empty())
        detail += "; e.g. " + first;
    return {violations == 0 && line_violations == 0 && failures == 0, detail};
}

Outcome monotone_trends()
{
    const std::vector<std::uint64_t> seeds{1, 2, 3};
    struct Sweep
    {
        exp::SweepAxis axis;
        std::vector<double> values;
        int elements;
        bool increasing;
    };
    const std::vector<Sweep> sweeps{{exp::SweepAxis::stripe_length, {0.5, 1.0, 1.5}, 0, true},
                                    {exp::SweepAxis::frequency, {2e9, 6e9, 10e9}, 24, false},
                                    {exp::SweepAxis::hotspot_perturbation, {0.0, 0.5, 1.0}, 24, false}};
    bool pass = true;
    std::string detail;
    for (const auto &s : sweeps)
    {
        auto c = base_config();
        c.methods = {"polygon"};
        c.precoders = {eval::PrecoderKind::mrt};
        c.axis = s.axis;
        c.values = s.values;
        c.elements = s.elements;
        c.seeds = seeds;
        c.validate();
        int failures = 0;
        const auto means = curve(exp::run_experiment(c).rows, failures);
        std::vector<double> y;
        for (double v : s.values)
        {
            const auto it = means.find({v, "polygon", "mrt"});
            y.push_back(it == means.end() ? std::nan("") : it->second);
        }
        bool ok = failures == 0;
        for (std::size_t k = 1; k < y.size(); ++k)
            ok = ok && (s.increasing ? y[k] > y[k - 1] : y[k] <= y[k - 1]);
        pass = pass && ok;
        detail += (detail.empty() ? "" : "; ") + exp::to_string(s.axis) + " [";
        for (std::size_t k = 0; k < y.size(); ++k)
            detail += (k ? " " : "") + fmt(y[k]);
        detail += std::string("] ") + (ok ? "ok" : "violated");
    }
    return {pass, detail};
}

// ---------------------------------------------------------------- 10

Outcome bound_inequality()
{
    std::mt19937_64 rng(1010);
    std::uniform_real_distribution<double> xy(1.0, 9.0), z(0.8, 1.2), ang(0.0, pi);
    std::uniform_int_distribution<int> nstripes(1, 3), nhot(2, 6), nel(4, 24), coin(0, 1);
    int ok = 0, total = 0;
    for (int k = 0; k < 500; ++k)
    {
        eval::EvalSetup s;
        s.rf = {0.03, 2.0, 5.0};
        const int U = nstripes(rng), K = std::max(U, nhot(rng));
        for (int u = 0; u < U; ++u)
        {
            const Point3 c{xy(rng), xy(rng), 5.0};
            s.stripes.push_back(coin(rng) ? deploy::polygon_layout(c, nel(rng), 0.015)
                                          : deploy::line_layout(c, nel(rng), 0.015, ang(rng)));
            s.budgets.push_back(1.0 / U);
        }
        std::uniform_int_distribution<int> lab(0, U - 1);
        for (int i = 0; i < K; ++i)
        {
            s.hotspots.push_back({{xy(rng), xy(rng), z(rng)}, 1.0});
            s.labels.push_back(i < U ? i : lab(rng));
        }
        std::vector<Point3> users;
        for (const auto &h : s.hotspots)
            users.push_back(h.center);
        const auto tx = eval::build_transmitters(s, eval::PrecoderKind::mrt, users, {});
        Eigen::MatrixXd v = Eigen::MatrixXd::Zero(K, U);
        std::vector<std::vector<int>> beam_of(static_cast<std::size_t>(U), std::vector<int>(static_cast<std::size_t>(K), -1));
        std::vector<int> next(static_cast<std::size_t>(U), 0);
        for (int i = 0; i < K; ++i)
        {
            const auto u = static_cast<std::size_t>(s.labels[static_cast<std::size_t>(i)]);
            v(i, static_cast<Eigen::Index>(u)) = 1.0;
            beam_of[u][static_cast<std::size_t>(i)] = next[u]++;
        }
        for (int i = 0; i < K; ++i)
        {
            const auto &p = users[static_cast<std::size_t>(i)];
            const double lb = beam::received_power_lower_bound(i, p, v, tx, beam_of, s.rf);
            const double exact = beam::received_power(p, tx, s.rf);
            ok += lb <= exact * (1.0 + 1e-12);
            ++total;
        }
    }
    return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " hotspots over 500 instances"};
}

// ---------------------------------------------------------------- 11

Outcome sdp_sanity()
{
    std::mt19937_64 rng(1111);
    std::uniform_real_distribution<double> xy(1.0, 5.0), z(0.8, 1.2), ang(0.0, pi);
    std::uniform_int_distribution<int> nhot(1, 4), nel(2, 16);
    const RfParams rf{0.03, 2.0, 5.0};
    double single_err = 0.0;
    for (int k = 0; k < 50; ++k)
    {
        const auto L = deploy::line_layout({xy(rng), xy(rng), 5.0}, nel(rng), 0.015, ang(rng));
        const std::vector<Eigen::VectorXcd> h{channel_vector(L, {xy(rng), xy(rng), z(rng)}, rf)};
        const std::vector<double> eta{1.0};
        const auto s = beam::sdp_precoders(h, eta, 1.0);
        const double mrt = beam::delivered_min_power(beam::mrt_precoders(h, std::vector<double>{1.0}), h, eta);
        single_err = std::max(single_err, std::abs(s.delivered_value - mrt) / mrt);
    }
    int ok = 0;
    double worst_ratio = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 50; ++k)
    {
        const int K = nhot(rng), N = nel(rng);
        const auto L = deploy::polygon_layout({3.0, 3.0, 5.0}, std::max(3, N), 0.015);
        std::vector<Eigen::VectorXcd> h;
        std::vector<double> eta, G;
        for (int i = 0; i < K; ++i)
        {
            h.push_back(channel_vector(L, {xy(rng), xy(rng), z(rng)}, rf));
            eta.push_back(1.0);
            G.push_back(h.back().squaredNorm());
        }
        const auto pa = beam::allocate_powers_lp(G, eta, 1.0);
        const double mrt = beam::delivered_min_power(beam::mrt_precoders(h, pa.powers), h, eta);
        const double sdp = beam::sdp_precoders(h, eta, 1.0).delivered_value;
        ok += sdp >= mrt * (1.0 - 1e-6);
        worst_ratio = std::min(worst_ratio, sdp / mrt);
    }
    return {single_err <= 1e-6 && ok == 50, "single-channel rel err " + fmt(single_err) + "; SDP >= MRT in " +
                                                std::to_string(ok) + "/50, worst SDP/MRT " + fmt(worst_ratio)};
}

// ---------------------------------------------------------------- 12

Outcome determinism()
{
    auto c = base_config();
    c.hotspot_count = 8;
    c.U = 2;
    c.methods = {"polygon", "sgp", "center_upa"};
    c.precoders = {eval::PrecoderKind::mrt, eval::PrecoderKind::sdp};
    c.axis = exp::SweepAxis::frequency;
    c.values = {6e9, 10e9};
    c.elements = 8;
    c.draws = 3;
    c.seeds = {5, 6};
    c.sdp_samples = 20;
    c.validate();
    const auto root = std::filesystem::temp_directory_path() / "stripeplan_acceptance_determinism";
    std::vector<std::string> files;
    for (int run = 0; run < 2; ++run)
    {
        const auto dir = root / ("run" + std::to_string(run));
        std::filesystem::remove_all(dir);
        std::filesystem::create_directories(dir / "cells");
        c.workers = run == 0 ? 1 : hardware_workers() + 1;
        const auto report = exp::run_experiment(c, dir / "cells");
        exp::write_file(dir / "results.csv", exp::rows_to_csv(report.rows));
        files.push_back(exp::read_file(dir / "results.csv"));
    }
    std::filesystem::remove_all(root);
    const auto lines = std::count(files[0].begin(), files[0].end(), '\n');
    return {files[0] == files[1] && lines > 1,
            std::string(files[0] == files[1] ? "identical" : "different") + " raw CSV across two runs (" +
                std::to_string(lines - 1) + " rows, worker counts differ)"};
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"stripeplan acceptance suite"};
    std::vector<int> only, known_fail;
    std::string configs = config_dir.string();
    app.add_option("--only", only, "Criteria to run (default all)")->delimiter(',');
    app.add_option("--known-fail", known_fail, "Criteria whose failure is documented and does not fail the run")
        ->delimiter(',');
    app.add_option("--configs", configs, "Directory holding scenario_25x25.json");
    CLI11_PARSE(app, argc, argv);
    config_dir = configs;

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"physics oracle", physics_oracle},
        {"monomial approximation", monomial_check},
        {"solver kernel", solver_kernel},
        {"clustering trends", clustering_trends},
        {"clustering brute-force oracle", clustering_brute_force},
        {"mapping feasibility", mapping_feasibility},
        {"deployment convergence", deployment_convergence},
        {"baseline dominance", baseline_dominance},
        {"monotone trends", monotone_trends},
        {"bound inequality", bound_inequality},
        {"SDP sanity", sdp_sanity},
        {"determinism", determinism},
    };
    const std::set<int> selected(only.begin(), only.end()), known(known_fail.begin(), known_fail.end());
    int unexpected = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k)
    {
        const int id = static_cast<int>(k) + 1;
        if (!selected.empty() && !selected.count(id))
            continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = criteria[k].second();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << "criterion " << id << " (" << criteria[k].first << "): " << (o.pass ? "PASS" : "FAIL")
                  << (!o.pass && known.count(id) ? " [known]" : "") << " - " << o.detail << " [" << fmt(s) << " s]"
                  << std::endl;
        unexpected += !o.pass && !known.count(id);
    }
    return unexpected == 0 ? 0 : 1;
}

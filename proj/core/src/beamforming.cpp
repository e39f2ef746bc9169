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

#include "stripeplan/beamforming.hpp"

#include "stripeplan/conic/interior_point.hpp"
#include "stripeplan/conic/lp.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace stripeplan::beam
{

namespace
{

void check_gains(std::span<const double> gains, std::span<const double> etas, double budget)
{
    if (gains.empty() || gains.size() != etas.size())
        throw BeamError("power allocation: gains and etas must be nonempty and of equal length");
    if (!(budget > 0.0))
        throw BeamError("power allocation: budget must be positive");
    for (std::size_t i = 0; i < gains.size(); ++i)
    {
        if (!(gains[i] > 0.0) || !std::isfinite(gains[i]))
            throw BeamError("power allocation: zero gain for hotspot " + std::to_string(i));
        if (!(etas[i] > 0.0))
            throw BeamError("power allocation: densities must be positive");
    }
}

} // namespace

PowerAllocation allocate_powers_lp(std::span<const double> gains, std::span<const double> etas, double budget)
{
    check_gains(gains, etas, budget);
    const int K = static_cast<int>(gains.size());
    // scaled so that the largest G/eta is 1
    double scale = 0.0;
    for (int i = 0; i < K; ++i)
        scale = std::max(scale, gains[static_cast<std::size_t>(i)] / etas[static_cast<std::size_t>(i)]);

    // variables (P_1..P_K, t): max t s.t. t - P_i G_i/(eta_i scale) <= 0, sum P <= budget
    conic::LinearProgram lp;
    lp.objective = Eigen::VectorXd::Zero(K + 1);
    lp.objective[K] = 1.0;
    lp.maximize = true;
    lp.A_ub = Eigen::MatrixXd::Zero(K + 1, K + 1);
    lp.b_ub = Eigen::VectorXd::Zero(K + 1);
    for (int i = 0; i < K; ++i)
    {
        lp.A_ub(i, i) = -gains[static_cast<std::size_t>(i)] / (etas[static_cast<std::size_t>(i)] * scale);
        lp.A_ub(i, K) = 1.0;
        lp.A_ub(K, i) = 1.0;
    }
    lp.b_ub[K] = budget;
    lp.lower = Eigen::VectorXd::Zero(K + 1);
    lp.upper = Eigen::VectorXd::Constant(K + 1, std::numeric_limits<double>::infinity());
    const auto sol = conic::solve_lp(lp, 1e-12);
    if (sol.status != conic::SolveStatus::optimal)
        throw BeamError(std::string("allocate_powers_lp: LP returned ") + conic::to_string(sol.status));
    PowerAllocation out;
    out.powers.resize(static_cast<std::size_t>(K));
    out.objective = std::numeric_limits<double>::infinity();
    for (int i = 0; i < K; ++i)
    {
        out.powers[static_cast<std::size_t>(i)] = std::max(0.0, sol.x[i]);
        out.objective = std::min(out.objective, out.powers[static_cast<std::size_t>(i)] *
                                                    gains[static_cast<std::size_t>(i)] /
                                                    etas[static_cast<std::size_t>(i)]);
    }
    return out;
}

PowerAllocation allocate_powers_closed_form(std::span<const double> gains, std::span<const double> etas,
                                            double budget)
{
    check_gains(gains, etas, budget);
    double s = 0.0;
    for (std::size_t i = 0; i < gains.size(); ++i)
        s += etas[i] / gains[i];
    PowerAllocation out;
    for (std::size_t i = 0; i < gains.size(); ++i)
        out.powers.push_back(budget * (etas[i] / gains[i]) / s);
    out.objective = budget / s;
    return out;
}

double PrecoderSet::total_power() const
{
    double s = 0.0;
    for (const auto &w : beams)
        s += w.squaredNorm();
    return s;
}

PrecoderSet mrt_precoders(std::span<const Eigen::VectorXcd> channels, std::span<const double> powers)
{
    if (channels.size() != powers.size())
        throw BeamError("mrt_precoders: one power per channel required");
    PrecoderSet out;
    for (std::size_t m = 0; m < channels.size(); ++m)
    {
        const double n = channels[m].norm();
        if (!(n > 0.0))
            throw BeamError("mrt_precoders: zero channel vector");
        if (powers[m] < 0.0)
            throw BeamError("mrt_precoders: negative power");
        out.beams.push_back(channels[m] * (std::sqrt(powers[m]) / n));
    }
    return out;
}

double received_power(const Point3 &point, std::span<const StripeTx> stripes, const RfParams &rf)
{
    if (!(point.z < rf.ceiling_h))
        throw BeamError("received_power: point must lie below the ceiling");
    double p = 0.0;
    for (const auto &s : stripes)
    {
        for (const auto &g : s.layout.elements)
            if (distance(g, point) == 0.0)
                throw BeamError("received_power: point coincides with an element");
        if (s.precoders.beams.empty())
            continue;
        const Eigen::VectorXcd h = channel_vector(s.layout, point, rf);
        for (const auto &w : s.precoders.beams)
            p += std::norm(h.dot(w));
    }
    return p;
}

double received_power_lower_bound(int hotspot, const Point3 &point, const Eigen::MatrixXd &assignment,
                                  std::span<const StripeTx> stripes,
                                  const std::vector<std::vector<int>> &beam_of, const RfParams &rf)
{
    double p = 0.0;
    for (std::size_t u = 0; u < stripes.size(); ++u)
    {
        const double v = assignment(hotspot, static_cast<Eigen::Index>(u));
        const int m = beam_of[u][static_cast<std::size_t>(hotspot)];
        if (v == 0.0 || m < 0)
            continue;
        const double P = stripes[u].precoders.beams[static_cast<std::size_t>(m)].squaredNorm();
        p += v * P * channel_gain_sq(stripes[u].layout, point, rf.boresight_b, rf.ceiling_h, rf.lambda);
    }
    return p;
}

double delivered_min_power(const PrecoderSet &precoders, std::span<const Eigen::VectorXcd> channels,
                           std::span<const double> etas)
{
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < channels.size(); ++i)
    {
        double p = 0.0;
        for (const auto &w : precoders.beams)
            p += std::norm(channels[i].dot(w));
        best = std::min(best, p / etas[i]);
    }
    return best;
}

SdpResult sdp_precoders(std::span<const Eigen::VectorXcd> channels, std::span<const double> etas, double budget,
                        const SdpOptions &options)
{
    const int K = static_cast<int>(channels.size());
    if (K < 1)
        throw BeamError("sdp_precoders: no channels");
    if (static_cast<int>(etas.size()) != K)
        throw BeamError("sdp_precoders: one density per channel required");
    if (!(budget > 0.0))
        throw BeamError("sdp_precoders: budget must be positive");
    const Eigen::Index N = channels[0].size();
    Eigen::MatrixXcd H(N, K);
    double scale = 0.0;
    for (int i = 0; i < K; ++i)
    {
        if (channels[static_cast<std::size_t>(i)].size() != N)
            throw BeamError("sdp_precoders: channel lengths differ");
        H.col(i) = channels[static_cast<std::size_t>(i)];
        scale = std::max(scale, H.col(i).norm());
    }
    if (!(scale > 0.0))
        throw BeamError("sdp_precoders: zero channels");
    H /= scale;

    // Optimal W lives in span{h_i}: W = Q X Q^H with X r x r
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(H);
    qr.setThreshold(1e-10);
    const int r = static_cast<int>(std::max<Eigen::Index>(1, qr.rank()));
    const Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(N, r);
    const Eigen::MatrixXcd A = Q.adjoint() * H; // r x K

    // Hermitian basis: diagonal entries, then real and imaginary off-diagonal parts
    std::vector<Eigen::MatrixXcd> basis;
    for (int p = 0; p < r; ++p)
    {
        Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(r, r);
        E(p, p) = 1.0;
        basis.push_back(E);
    }
    const std::complex<double> I(0.0, 1.0);
    for (int p = 0; p < r; ++p)
        for (int q = p + 1; q < r; ++q)
        {
            Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(r, r);
            E(p, q) = 1.0;
            E(q, p) = 1.0;
            basis.push_back(E);
            Eigen::MatrixXcd F = Eigen::MatrixXcd::Zero(r, r);
            F(p, q) = I;
            F(q, p) = -I;
            basis.push_back(F);
        }
    const int nb = static_cast<int>(basis.size());
    const int t_var = nb;

    conic::ConvexProgram cp(nb + 1);
    cp.set_objective(t_var, -1.0);
    for (int i = 0; i < K; ++i)
    {
        // eta_i t - a_i^H X a_i <= 0
        conic::SparseRow row;
        for (int k = 0; k < nb; ++k)
        {
            const double c = std::real(A.col(i).dot(basis[static_cast<std::size_t>(k)] * A.col(i)));
            if (c != 0.0)
                row.add(k, -c);
        }
        row.add(t_var, etas[static_cast<std::size_t>(i)]);
        cp.add_linear(std::move(row), 0.0);
    }
    {
        conic::SparseRow tr;
        for (int p = 0; p < r; ++p)
            tr.add(p, 1.0);
        cp.add_linear(std::move(tr), budget);
    }
    {
        std::vector<int> vars(static_cast<std::size_t>(nb));
        for (int k = 0; k < nb; ++k)
            vars[static_cast<std::size_t>(k)] = k;
        cp.add_lmi(vars, basis, Eigen::MatrixXcd::Zero(r, r));
    }
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(nb + 1);
    for (int p = 0; p < r; ++p)
        x0[p] = 0.9 * budget / r;
    double t0 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < K; ++i)
        t0 = std::min(t0, 0.9 * budget / r * A.col(i).squaredNorm() / etas[static_cast<std::size_t>(i)]);
    x0[t_var] = 0.5 * t0;

    conic::InteriorPointOptions opt;
    opt.tolerance = options.tolerance;
    const auto res = conic::solve_interior_point(cp, opt, &x0);
    if (res.status != conic::SolveStatus::optimal)
        throw BeamError(std::string("sdp_precoders: solver returned ") + conic::to_string(res.status));

    Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(r, r);
    for (int k = 0; k < nb; ++k)
        X += res.x[k] * basis[static_cast<std::size_t>(k)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(X);
    const Eigen::VectorXd lam = eig.eigenvalues();
    const double lmax = std::max(lam.maxCoeff(), 0.0);

    SdpResult out;
    out.sdp_value = res.x[t_var] * scale * scale;

    // Beams from the eigen-decomposition; received powers add over beams, so
    // sum_k lambda_k u_k u_k^H reproduces W exactly
    PrecoderSet eigen_beams;
    for (int k = 0; k < r; ++k)
    {
        if (!(lam[k] > 1e-9 * lmax))
            continue;
        eigen_beams.beams.push_back(Q * eig.eigenvectors().col(k) * std::sqrt(lam[k]));
        ++out.rank;
    }
    double total = eigen_beams.total_power();
    if (total > budget)
        for (auto &w : eigen_beams.beams)
            w *= std::sqrt(budget / total);

    // Gaussian randomization: single beams w = Q X^(1/2) z scaled to the budget
    PrecoderSet random_best;
    double random_value = -1.0;
    {
        std::mt19937_64 rng(options.seed);
        std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
        Eigen::MatrixXcd root = eig.eigenvectors() * lam.cwiseMax(0.0).cwiseSqrt().asDiagonal();
        for (int s = 0; s < options.extraction_samples; ++s)
        {
            Eigen::VectorXcd z(r);
            for (int p = 0; p < r; ++p)
                z[p] = {gauss(rng), gauss(rng)};
            Eigen::VectorXcd w = Q * (root * z);
            const double n2 = w.squaredNorm();
            if (!(n2 > 0.0))
                continue;
            w *= std::sqrt(budget / n2);
            PrecoderSet cand;
            cand.beams.push_back(w);
            double d = std::numeric_limits<double>::infinity();
            for (int i = 0; i < K; ++i)
                d = std::min(d, std::norm(H.col(i).dot(w)) / etas[static_cast<std::size_t>(i)]);
            if (d > random_value)
            {
                random_value = d;
                random_best = std::move(cand);
            }
        }
    }

    double eigen_value = std::numeric_limits<double>::infinity();
    for (int i = 0; i < K; ++i)
    {
        double p = 0.0;
        for (const auto &w : eigen_beams.beams)
            p += std::norm(H.col(i).dot(w));
        eigen_value = std::min(eigen_value, p / etas[static_cast<std::size_t>(i)]);
    }
    if (eigen_value >= random_value)
    {
        out.precoders = std::move(eigen_beams);
        out.delivered_value = eigen_value * scale * scale;
        out.method = "eigen";
    }
    else
    {
        out.precoders = std::move(random_best);
        out.delivered_value = random_value * scale * scale;
        out.method = "randomized";
    }
    out.shortfall = out.sdp_value > 0.0 ? 1.0 - out.delivered_value / out.sdp_value : 0.0;
    return out;
}

} // namespace stripeplan::beam

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

#include "stripeplan/channel.hpp"
#include "stripeplan/scenario.hpp"

#include <Eigen/Core>

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace stripeplan::beam
{

class BeamError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct PowerAllocation
{
    std::vector<double> powers; // watts, one per hotspot
    double objective = 0.0;     // min_i P_i G_i / eta_i
};

// max t  s.t.  t <= P_i G_i / eta_i,  sum P_i <= budget
PowerAllocation allocate_powers_lp(std::span<const double> gains, std::span<const double> etas, double budget);

// P_i proportional to eta_i / G_i, which equalizes every constraint
PowerAllocation allocate_powers_closed_form(std::span<const double> gains, std::span<const double> etas,
                                            double budget);

// Transmit beams of one stripe; beam m carries ||w_m||^2 watts
struct PrecoderSet
{
    std::vector<Eigen::VectorXcd> beams;

    double total_power() const;
};

// w_m = h_m / ||h_m|| * sqrt(P_m). Beams are applied as h^H w, so w points along h.
PrecoderSet mrt_precoders(std::span<const Eigen::VectorXcd> channels, std::span<const double> powers);

struct StripeTx
{
    StripeLayout layout;
    PrecoderSet precoders;
};

// sum over stripes and beams of |h(point)^H w|^2
double received_power(const Point3 &point, std::span<const StripeTx> stripes, const RfParams &rf);

// Dedicated-beam term only: sum_u v_{u,i} P_{u,i} ||h_{u,i}||^2. beam_of[u][i] is the
// beam index stripe u dedicates to hotspot i, or -1.
double received_power_lower_bound(int hotspot, const Point3 &point, const Eigen::MatrixXd &assignment,
                                  std::span<const StripeTx> stripes,
                                  const std::vector<std::vector<int>> &beam_of, const RfParams &rf);

struct SdpOptions
{
    int extraction_samples = 100;
    std::uint64_t seed = 1;
    double tolerance = 1e-8;
};

struct SdpResult
{
    PrecoderSet precoders;
    double sdp_value = 0.0;       // t* of the relaxation
    double delivered_value = 0.0; // min_i |h_i^H W h_i| / eta_i realized by the beams
    double shortfall = 0.0;       // 1 - delivered / sdp_value
    int rank = 0;                 // numerical rank of the optimal W
    std::string method;           // "eigen" or "randomized"
};

// max t  s.t.  h_i^H W h_i >= eta_i t,  tr W <= budget,  W psd; beams extracted from W
SdpResult sdp_precoders(std::span<const Eigen::VectorXcd> channels, std::span<const double> etas, double budget,
                        const SdpOptions &options = {});

// min_i of the power the beams deliver on channel i, divided by eta_i
double delivered_min_power(const PrecoderSet &precoders, std::span<const Eigen::VectorXcd> channels,
                           std::span<const double> etas);

} // namespace stripeplan::beam

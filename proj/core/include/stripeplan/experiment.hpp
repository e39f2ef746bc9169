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

#include "stripeplan/clustering.hpp"
#include "stripeplan/deployment/deploy.hpp"
#include "stripeplan/evaluation.hpp"
#include "stripeplan/scenario.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stripeplan::exp
{

class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

enum class SweepAxis
{
    none,
    frequency,
    stripe_length,
    boresight_b,
    hotspot_perturbation
};

SweepAxis parse_axis(const std::string &name);
std::string to_string(SweepAxis axis);

struct ExperimentConfig
{
    Scenario scenario;
    int hotspot_count = 0; // > 0 draws fresh hotspots for every seed
    ZRange z_range;
    int U = 1;
    std::string clustering = "fac_ao"; // fac_ao (K-Chebyshev start) or chebyshev
    std::vector<std::string> methods{"polygon"};
    std::vector<eval::PrecoderKind> precoders{eval::PrecoderKind::mrt};
    SweepAxis axis = SweepAxis::none;
    std::vector<double> values; // empty for axis none
    int elements = 0;           // fixed N per stripe; 0 derives N from the stripe length
    int draws = 100;
    double radius = 0.5;
    std::vector<std::uint64_t> seeds{1};
    deploy::DeployOptions deploy;
    int sdp_samples = 100;
    int workers = 1;
    bool record_runtime = false;

    // Throws ConfigError
    void validate() const;
    // Grid values; a single NaN placeholder for axis none
    std::vector<double> grid() const;
};

// base_dir resolves a relative scenario path
ExperimentConfig parse_config(const std::string &json_text, const std::filesystem::path &base_dir = {});
ExperimentConfig load_config(const std::filesystem::path &path);

// Scenario of one grid point and seed
Scenario cell_scenario(const ExperimentConfig &config, std::size_t seed_index, double value);
int cell_elements(const ExperimentConfig &config, const Scenario &scenario);

struct ClusterRecord
{
    std::size_t seed_index = 0;
    double b = 2.0;
    std::vector<Hotspot> hotspots;
    cluster::ClusterSolution solution;
    std::string status = "ok";
};

struct DeployRecord
{
    std::size_t seed_index = 0;
    std::size_t grid_index = 0;
    std::string method;
    std::vector<int> labels;
    std::vector<Point3> heads;
    std::vector<double> budgets;
    std::vector<deploy::DeploymentResult> stripes;
    double runtime_s = 0.0;
    int iterations = 0; // largest outer iteration count over the stripes
    std::string status = "ok";
};

struct ResultRow
{
    std::string sweep_axis;
    double sweep_value = 0.0;
    std::string method;
    std::string precoder;
    int draw = 0; // seed_index * draws + local draw
    std::optional<double> min_power_w;
    std::optional<double> runtime_s;
    int iterations = 0;
    std::string status = "ok";
};

struct SummaryCell
{
    std::string sweep_axis;
    double sweep_value = 0.0;
    std::string method;
    std::string precoder;
    int samples = 0;
    int failures = 0;
    double mean = 0.0;
    double min = 0.0;
    double std = 0.0; // sample standard deviation
};

struct RunReport
{
    std::vector<ClusterRecord> clusters;
    std::vector<DeployRecord> deployments;
    std::vector<ResultRow> rows;
    int failed_cells = 0;
};

// Failures of a seed or a (grid point, method) cell are recorded in status, never thrown
std::vector<ClusterRecord> run_clustering(const ExperimentConfig &config);
std::vector<DeployRecord> run_deployment(const ExperimentConfig &config, const std::vector<ClusterRecord> &clusters);
std::vector<ResultRow> run_evaluation(const ExperimentConfig &config, const std::vector<ClusterRecord> &clusters,
                                      const std::vector<DeployRecord> &deployments,
                                      const std::filesystem::path &cell_dir = {});
RunReport run_experiment(const ExperimentConfig &config, const std::filesystem::path &cell_dir = {});

int count_failed_cells(const std::vector<DeployRecord> &deployments, const std::vector<ResultRow> &rows);

// Serialization. Doubles are written in shortest round-trip form.
std::string format_double(double v);
std::string rows_to_csv(const std::vector<ResultRow> &rows);
std::vector<ResultRow> parse_rows_csv(const std::string &text);
std::vector<SummaryCell> summarize(const std::vector<ResultRow> &rows);
std::string summary_to_csv(const std::vector<SummaryCell> &cells);

std::string layout_to_json(const StripeLayout &layout);
StripeLayout layout_from_json(const std::string &text);
std::string clusters_to_json(const std::vector<ClusterRecord> &clusters);
std::vector<ClusterRecord> clusters_from_json(const std::string &text);
std::string deployments_to_json(const ExperimentConfig &config, const std::vector<ClusterRecord> &clusters,
                                const std::vector<DeployRecord> &deployments);
std::vector<DeployRecord> deployments_from_json(const std::string &text);

// Writes summary.csv and plot.py next to results.csv. Throws std::runtime_error when outdir is unwritable.
void emit_report(const std::vector<ResultRow> &rows, const std::filesystem::path &outdir);

std::string read_file(const std::filesystem::path &path);
void write_file(const std::filesystem::path &path, const std::string &text);

} // namespace stripeplan::exp

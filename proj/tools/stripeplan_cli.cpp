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

#include "stripeplan/experiment.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace stripeplan;

namespace
{

struct Flags
{
    std::string config;
    std::string out = "run";
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::vector<std::string> methods;
    std::vector<std::string> precoders;
};

void log(const std::string &msg)
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    localtime_r(&now, &tm);
    std::cerr << std::put_time(&tm, "%H:%M:%S") << " " << msg << "\n";
}

exp::ExperimentConfig resolve(const Flags &f)
{
    auto c = exp::load_config(f.config);
    if (f.seed)
        c.seeds = {*f.seed};
    if (f.workers)
        c.workers = *f.workers;
    if (!f.methods.empty())
        c.methods = f.methods;
    if (!f.precoders.empty())
    {
        c.precoders.clear();
        for (const auto &p : f.precoders)
            c.precoders.push_back(eval::parse_precoder(p));
    }
    c.validate();
    return c;
}

std::vector<exp::ClusterRecord> clusters_for(const exp::ExperimentConfig &c, const fs::path &out)
{
    const fs::path path = out / "clusters.json";
    if (fs::exists(path))
    {
        log("reusing " + path.string());
        return exp::clusters_from_json(exp::read_file(path));
    }
    log("clustering " + std::to_string(c.seeds.size()) + " seed(s)");
    auto clusters = exp::run_clustering(c);
    exp::write_file(path, exp::clusters_to_json(clusters));
    return clusters;
}

int stage_cluster(const Flags &f)
{
    const auto c = resolve(f);
    const fs::path out = f.out;
    fs::create_directories(out);
    log("clustering " + std::to_string(c.seeds.size()) + " seed(s)");
    const auto clusters = exp::run_clustering(c);
    exp::write_file(out / "clusters.json", exp::clusters_to_json(clusters));
    int failed = 0;
    for (const auto &r : clusters)
        failed += r.status != "ok";
    log("wrote " + (out / "clusters.json").string());
    return failed > 0 ? 1 : 0;
}

int stage_deploy(const Flags &f)
{
    const auto c = resolve(f);
    const fs::path out = f.out;
    fs::create_directories(out);
    const auto clusters = clusters_for(c, out);
    log("deploying " + std::to_string(c.methods.size()) + " method(s)");
    const auto deployments = exp::run_deployment(c, clusters);
    exp::write_file(out / "layouts.json", exp::deployments_to_json(c, clusters, deployments));
    int failed = 0;
    for (const auto &d : deployments)
        if (d.status != "ok")
        {
            ++failed;
            log(d.method + " seed " + std::to_string(d.seed_index) + " grid " + std::to_string(d.grid_index) + ": " +
                d.status);
        }
    log("wrote " + (out / "layouts.json").string());
    return failed > 0 ? 1 : 0;
}

int write_results(const exp::ExperimentConfig &c, const fs::path &out, const std::vector<exp::ClusterRecord> &clusters,
                  const std::vector<exp::DeployRecord> &deployments)
{
    log("evaluating " + std::to_string(c.draws) + " draw(s) per cell");
    const auto rows = exp::run_evaluation(c, clusters, deployments, out / "cells");
    exp::write_file(out / "results.csv", exp::rows_to_csv(rows));
    exp::emit_report(rows, out);
    const int failed = exp::count_failed_cells(deployments, rows);
    log("wrote " + (out / "results.csv").string() + (failed ? ", " + std::to_string(failed) + " failed cell(s)" : ""));
    return failed > 0 ? 1 : 0;
}

int stage_evaluate(const Flags &f)
{
    const auto c = resolve(f);
    const fs::path out = f.out;
    const auto clusters = exp::clusters_from_json(exp::read_file(out / "clusters.json"));
    const auto deployments = exp::deployments_from_json(exp::read_file(out / "layouts.json"));
    return write_results(c, out, clusters, deployments);
}

int stage_sweep(const Flags &f)
{
    const auto c = resolve(f);
    const fs::path out = f.out;
    fs::create_directories(out);
    log("clustering " + std::to_string(c.seeds.size()) + " seed(s)");
    const auto clusters = exp::run_clustering(c);
    exp::write_file(out / "clusters.json", exp::clusters_to_json(clusters));
    log("deploying " + std::to_string(c.methods.size()) + " method(s)");
    const auto deployments = exp::run_deployment(c, clusters);
    exp::write_file(out / "layouts.json", exp::deployments_to_json(c, clusters, deployments));
    return write_results(c, out, clusters, deployments);
}

int stage_report(const Flags &f)
{
    const fs::path out = f.out;
    const auto rows = exp::parse_rows_csv(exp::read_file(out / "results.csv"));
    exp::emit_report(rows, out);
    log("wrote " + (out / "summary.csv").string() + " and plot.py");
    int failed = 0;
    for (const auto &cell : exp::summarize(rows))
        failed += cell.failures > 0;
    return failed > 0 ? 1 : 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Radio stripe deployment planner: cluster, deploy, evaluate and sweep"};
    app.require_subcommand(1);
    Flags f;

    auto add_common = [&](CLI::App *sub, bool needs_config) {
        auto *opt = sub->add_option("--config", f.config, "Experiment config (JSON)")->check(CLI::ExistingFile);
        if (needs_config)
            opt->required();
        sub->add_option("--out", f.out, "Output directory")->capture_default_str();
        sub->add_option("--seed", f.seed, "Run a single seed instead of the configured list");
        sub->add_option("--workers", f.workers, "Parallel workers")->check(CLI::PositiveNumber);
        sub->add_option("--method", f.methods, "Deployment methods (comma separated)")->delimiter(',');
        sub->add_option("--precoder", f.precoders, "Precoders: mrt, sdp (comma separated)")
            ->delimiter(',')
            ->check(CLI::IsMember({"mrt", "sdp"}));
    };

    auto *cluster = app.add_subcommand("cluster", "Cluster hotspots into stripes, write clusters.json");
    auto *deploy = app.add_subcommand("deploy", "Deploy every method per cluster, write layouts.json");
    auto *evaluate = app.add_subcommand("evaluate", "Monte Carlo evaluation of layouts.json, write results.csv");
    auto *sweep = app.add_subcommand("sweep", "Run cluster, deploy and evaluate over the configured grid");
    auto *report = app.add_subcommand("report", "Summarize results.csv and emit plot.py");
    for (auto *sub : {cluster, deploy, evaluate, sweep})
        add_common(sub, true);
    add_common(report, false);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        // help and version exit 0, usage errors share the error status
        return app.exit(e) == 0 ? 0 : 2;
    }

    try
    {
        if (cluster->parsed())
            return stage_cluster(f);
        if (deploy->parsed())
            return stage_deploy(f);
        if (evaluate->parsed())
            return stage_evaluate(f);
        if (sweep->parsed())
            return stage_sweep(f);
        return stage_report(f);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

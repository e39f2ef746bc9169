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

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <thread>
#include <tuple>

namespace stripeplan::exp
{

using nlohmann::json;

namespace
{

const char *const csv_header = "sweep_axis,sweep_value,method,precoder,draw,min_power_w,runtime_s,iterations,status";

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)> &job)
{
    const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), count);
    if (threads <= 1)
    {
        for (std::size_t k = 0; k < count; ++k)
            job(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < count; k = next++)
                job(k);
        });
    for (auto &t : pool)
        t.join();
}

std::string sanitize(const std::string &what)
{
    std::string s = "failed: " + what;
    for (char &ch : s)
        if (ch == ',' || ch == '\n' || ch == '\r' || ch == '"')
            ch = ch == ',' ? ';' : ' ';
    return s;
}

json point_json(const Point3 &p)
{
    return json::array({p.x, p.y, p.z});
}

Point3 point_from(const json &j)
{
    return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

json points_json(const std::vector<Point3> &pts)
{
    json a = json::array();
    for (const auto &p : pts)
        a.push_back(point_json(p));
    return a;
}

std::vector<Point3> points_from(const json &j)
{
    std::vector<Point3> out;
    for (const auto &p : j)
        out.push_back(point_from(p));
    return out;
}

json hotspots_json(const std::vector<Hotspot> &hs)
{
    json a = json::array();
    for (const auto &h : hs)
        a.push_back({{"center", point_json(h.center)}, {"density", h.density}});
    return a;
}

std::vector<Hotspot> hotspots_from(const json &j)
{
    std::vector<Hotspot> out;
    for (const auto &h : j)
        out.push_back({point_from(h.at("center")), h.at("density").get<double>()});
    return out;
}

json layout_value(const StripeLayout &layout)
{
    return {{"kappa", layout.kappa}, {"elements", points_json(layout.elements)}};
}

StripeLayout layout_from_value(const json &j)
{
    return {points_from(j.at("elements")), j.at("kappa").get<double>()};
}

json result_json(const deploy::DeploymentResult &r)
{
    return {{"method", r.method},
            {"layout", layout_value(r.layout)},
            {"raw_layout", layout_value(r.raw_layout)},
            {"powers", r.powers},
            {"objective", r.objective},
            {"pre_mapping_objective", r.pre_mapping_objective},
            {"history", r.history},
            {"iterations", r.iterations},
            {"converged", r.converged},
            {"success", r.success},
            {"message", r.message},
            {"mapping_sweeps", r.mapping_sweeps},
            {"line_angle", r.line_angle},
            {"shape_center", point_json(r.shape_center)}};
}

deploy::DeploymentResult result_from(const json &j)
{
    deploy::DeploymentResult r;
    r.method = j.at("method").get<std::string>();
    r.layout = layout_from_value(j.at("layout"));
    r.raw_layout = layout_from_value(j.at("raw_layout"));
    r.powers = j.at("powers").get<std::vector<double>>();
    r.objective = j.at("objective").get<double>();
    r.pre_mapping_objective = j.at("pre_mapping_objective").get<double>();
    r.history = j.at("history").get<std::vector<double>>();
    r.iterations = j.at("iterations").get<int>();
    r.converged = j.at("converged").get<bool>();
    r.success = j.at("success").get<bool>();
    r.message = j.at("message").get<std::string>();
    r.mapping_sweeps = j.at("mapping_sweeps").get<int>();
    r.line_angle = j.at("line_angle").get<double>();
    r.shape_center = point_from(j.at("shape_center"));
    return r;
}

std::vector<std::string> split_csv_line(const std::string &line)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ','))
        out.push_back(field);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

double parse_double(const std::string &s)
{
    if (s == "NA")
        return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::runtime_error("malformed number '" + s + "' in results CSV");
    return v;
}

const ClusterRecord *find_cluster(const std::vector<ClusterRecord> &clusters, std::size_t seed_index, double b)
{
    for (const auto &c : clusters)
        if (c.seed_index == seed_index && c.b == b)
            return &c;
    return nullptr;
}

const DeployRecord *find_deployment(const std::vector<DeployRecord> &deployments, std::size_t seed_index,
                                    std::size_t grid_index, const std::string &method)
{
    for (const auto &d : deployments)
        if (d.seed_index == seed_index && d.grid_index == grid_index && d.method == method)
            return &d;
    return nullptr;
}

// Grid values on the perturbation axis share one deployment
std::size_t deploy_grid_index(const ExperimentConfig &config, std::size_t g)
{
    return config.axis == SweepAxis::hotspot_perturbation ? 0 : g;
}

eval::EvalSetup eval_setup(const Scenario &s, const DeployRecord &d, const std::vector<Hotspot> &hotspots)
{
    eval::EvalSetup setup;
    setup.hotspots = hotspots;
    setup.labels = d.labels;
    setup.budgets = d.budgets;
    for (const auto &r : d.stripes)
        setup.stripes.push_back(r.layout);
    setup.rf = {s.wavelength(), s.boresight_b, s.ceiling_h};
    setup.area = s.area();
    return setup;
}

eval::EvalOptions eval_options(const ExperimentConfig &config, std::size_t seed_index, double value)
{
    eval::EvalOptions o;
    o.draws = config.draws;
    o.radius = config.radius;
    o.perturbation = config.axis == SweepAxis::hotspot_perturbation ? value : 0.0;
    // common user draws for every method and grid point of a seed
    o.seed = mix_seed(config.seeds[seed_index], 1);
    o.sdp.extraction_samples = config.sdp_samples;
    o.workers = 1;
    return o;
}

} // namespace

SweepAxis parse_axis(const std::string &name)
{
    if (name == "none")
        return SweepAxis::none;
    if (name == "frequency")
        return SweepAxis::frequency;
    if (name == "stripe_length")
        return SweepAxis::stripe_length;
    if (name == "boresight_b")
        return SweepAxis::boresight_b;
    if (name == "hotspot_perturbation")
        return SweepAxis::hotspot_perturbation;
    throw ConfigError("unknown sweep axis '" + name +
                      "' (expected none, frequency, stripe_length, boresight_b or hotspot_perturbation)");
}

std::string to_string(SweepAxis axis)
{
    switch (axis)
    {
    case SweepAxis::frequency:
        return "frequency";
    case SweepAxis::stripe_length:
        return "stripe_length";
    case SweepAxis::boresight_b:
        return "boresight_b";
    case SweepAxis::hotspot_perturbation:
        return "hotspot_perturbation";
    default:
        return "none";
    }
}

void ExperimentConfig::validate() const
{
    if (methods.empty())
        throw ConfigError("methods: at least one deployment method is required");
    const auto known = deploy::method_names();
    for (const auto &m : methods)
        if (std::find(known.begin(), known.end(), m) == known.end())
            throw ConfigError("methods: unknown method '" + m + "'");
    if (precoders.empty())
        throw ConfigError("precoders: at least one precoder is required");
    if (clustering != "fac_ao" && clustering != "chebyshev")
        throw ConfigError("clustering: expected fac_ao or chebyshev");
    if (U < 1)
        throw ConfigError("stripes: must be at least 1");
    if (draws < 1)
        throw ConfigError("draws: must be at least 1");
    if (!(radius >= 0.0))
        throw ConfigError("radius: must be nonnegative");
    if (seeds.empty())
        throw ConfigError("seeds: at least one seed is required");
    if (elements == 1 || elements < 0)
        throw ConfigError("elements: must be 0 or at least 2");
    if (hotspot_count < 0)
        throw ConfigError("hotspot_count: must be nonnegative");
    if (axis == SweepAxis::none && !values.empty())
        throw ConfigError("sweep.values given without a sweep axis");
    if (axis != SweepAxis::none && values.empty())
        throw ConfigError("sweep.values: the grid is empty");
    for (double v : values)
    {
        const bool ok = axis == SweepAxis::hotspot_perturbation || axis == SweepAxis::boresight_b ? v >= 0.0 : v > 0.0;
        if (!ok || !std::isfinite(v))
            throw ConfigError("sweep.values: " + format_double(v) + " is not a valid " + to_string(axis));
    }
    if (sdp_samples < 1)
        throw ConfigError("sdp_samples: must be at least 1");
    const int K = hotspot_count > 0 ? hotspot_count : static_cast<int>(scenario.hotspots.size());
    if (U > K)
        throw ConfigError("stripes: more stripes than hotspots");
}

std::vector<double> ExperimentConfig::grid() const
{
    if (axis == SweepAxis::none)
        return {std::numeric_limits<double>::quiet_NaN()};
    return values;
}

ExperimentConfig parse_config(const std::string &json_text, const std::filesystem::path &base_dir)
{
    json j;
    try
    {
        j = json::parse(json_text);
    }
    catch (const json::parse_error &e)
    {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object())
        throw ConfigError("config must be a JSON object");

    ExperimentConfig c;
    try
    {
        c.hotspot_count = j.value("hotspot_count", 0);
        if (j.contains("z_range"))
        {
            const auto z = j.at("z_range").get<std::vector<double>>();
            if (z.size() != 2)
                throw ConfigError("z_range: expected [lo, hi]");
            c.z_range = {z[0], z[1]};
        }
        if (!j.contains("scenario"))
            throw ConfigError("scenario: missing (path or inline object)");
        json sj;
        const auto &sv = j.at("scenario");
        if (sv.is_string())
        {
            std::filesystem::path p = sv.get<std::string>();
            if (p.is_relative() && !base_dir.empty())
                p = base_dir / p;
            try
            {
                sj = json::parse(read_file(p));
            }
            catch (const json::parse_error &e)
            {
                throw ConfigError("scenario " + p.string() + ": " + e.what());
            }
        }
        else
            sj = sv;
        if (c.hotspot_count > 0 && !sj.contains("hotspots") && !sj.contains("hotspot_generation"))
            sj["hotspot_generation"] = {{"count", c.hotspot_count}, {"seed", 0},
                                        {"z_range", {c.z_range.lo, c.z_range.hi}}};
        c.scenario = parse_scenario(sj.dump());

        c.U = j.value("stripes", 1);
        c.clustering = j.value("clustering", std::string("fac_ao"));
        if (j.contains("methods"))
            c.methods = j.at("methods").get<std::vector<std::string>>();
        if (j.contains("precoders"))
        {
            c.precoders.clear();
            for (const auto &p : j.at("precoders"))
                c.precoders.push_back(eval::parse_precoder(p.get<std::string>()));
        }
        if (j.contains("sweep"))
        {
            const auto &s = j.at("sweep");
            c.axis = parse_axis(s.value("axis", std::string("none")));
            if (s.contains("values"))
                c.values = s.at("values").get<std::vector<double>>();
        }
        c.elements = j.value("elements", 0);
        c.draws = j.value("draws", 100);
        c.radius = j.value("radius", 0.5);
        if (j.contains("seeds"))
            c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        if (j.contains("deploy"))
        {
            const auto &d = j.at("deploy");
            auto &o = c.deploy;
            o.epsilon = d.value("epsilon", o.epsilon);
            o.max_iterations = d.value("max_iterations", o.max_iterations);
            o.trust.omega = d.value("omega", o.trust.omega);
            o.trust.rho = d.value("rho", o.trust.rho);
            o.trust.sigma = d.value("sigma", o.trust.sigma);
            o.trust.chi = d.value("chi", o.trust.chi);
            o.trust.g_step = d.value("g_step", o.trust.g_step);
            o.zeta = d.value("zeta", o.zeta);
            o.sca_inner_max = d.value("sca_inner_max", o.sca_inner_max);
            o.max_shrinks = d.value("max_shrinks", o.max_shrinks);
            o.spacing_slack = d.value("spacing_slack", o.spacing_slack);
        }
        c.sdp_samples = j.value("sdp_samples", 100);
        c.workers = j.value("workers", 1);
        c.record_runtime = j.value("record_runtime", false);
    }
    catch (const json::exception &e)
    {
        throw ConfigError(std::string("config: ") + e.what());
    }
    catch (const eval::EvalError &e)
    {
        throw ConfigError(std::string("precoders: ") + e.what());
    }
    catch (const ScenarioError &e)
    {
        throw ConfigError(std::string("scenario: ") + e.what());
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path &path)
{
    return parse_config(read_file(path), path.parent_path());
}

Scenario cell_scenario(const ExperimentConfig &config, std::size_t seed_index, double value)
{
    Scenario s = config.scenario;
    if (config.hotspot_count > 0)
        s.hotspots = generate_hotspots(s.area_x, s.area_y, s.ceiling_h, config.hotspot_count, config.z_range,
                                       mix_seed(config.seeds[seed_index], 0));
    switch (config.axis)
    {
    case SweepAxis::frequency:
        s.frequency_hz = value;
        break;
    case SweepAxis::stripe_length:
        s.stripe_length = value;
        break;
    case SweepAxis::boresight_b:
        s.boresight_b = value;
        break;
    default:
        break;
    }
    if (config.elements > 0)
    {
        // the stripe length only matters through the element count
        s.stripe_length = std::max(s.stripe_length, (config.elements - 1) * s.kappa());
    }
    s.validate();
    return s;
}

int cell_elements(const ExperimentConfig &config, const Scenario &scenario)
{
    return config.elements > 0 ? config.elements : scenario.elements_per_stripe();
}

std::vector<ClusterRecord> run_clustering(const ExperimentConfig &config)
{
    std::vector<double> bs;
    if (config.axis == SweepAxis::boresight_b)
        bs = config.values;
    else
        bs = {config.scenario.boresight_b};
    std::sort(bs.begin(), bs.end());
    bs.erase(std::unique(bs.begin(), bs.end()), bs.end());

    std::vector<ClusterRecord> out;
    for (std::size_t si = 0; si < config.seeds.size(); ++si)
        for (double b : bs)
        {
            ClusterRecord r;
            r.seed_index = si;
            r.b = b;
            out.push_back(r);
        }
    parallel_for(out.size(), config.workers, [&](std::size_t k) {
        ClusterRecord &r = out[k];
        try
        {
            Scenario s = config.scenario;
            if (config.hotspot_count > 0)
                s.hotspots = generate_hotspots(s.area_x, s.area_y, s.ceiling_h, config.hotspot_count,
                                               config.z_range, mix_seed(config.seeds[r.seed_index], 0));
            r.hotspots = s.hotspots;
            const auto cheb = cluster::chebyshev_cluster(r.hotspots, config.U, r.b, s.ceiling_h,
                                                         mix_seed(config.seeds[r.seed_index], 2));
            r.solution = config.clustering == "fac_ao" ? cluster::fac_ao(r.hotspots, config.U, cheb, r.b, s.ceiling_h)
                                                       : cheb;
        }
        catch (const std::exception &e)
        {
            r.status = sanitize(e.what());
        }
    });
    return out;
}

std::vector<DeployRecord> run_deployment(const ExperimentConfig &config, const std::vector<ClusterRecord> &clusters)
{
    const auto grid = config.grid();
    const std::size_t G = config.axis == SweepAxis::hotspot_perturbation ? 1 : grid.size();
    std::vector<DeployRecord> out;
    for (std::size_t si = 0; si < config.seeds.size(); ++si)
        for (std::size_t g = 0; g < G; ++g)
            for (const auto &m : config.methods)
            {
                DeployRecord d;
                d.seed_index = si;
                d.grid_index = g;
                d.method = m;
                out.push_back(d);
            }
    parallel_for(out.size(), config.workers, [&](std::size_t k) {
        DeployRecord &d = out[k];
        const auto start = std::chrono::steady_clock::now();
        try
        {
            const Scenario s = cell_scenario(config, d.seed_index, grid[d.grid_index]);
            const ClusterRecord *c = find_cluster(clusters, d.seed_index, s.boresight_b);
            if (!c)
                throw std::runtime_error("no clustering for this seed and boresight gain");
            if (c->status != "ok")
                throw std::runtime_error("clustering " + c->status);
            d.labels = c->solution.labels();
            d.heads = c->solution.heads;
            d.budgets = s.stripe_budgets(config.U);
            const int N = cell_elements(config, s);
            for (int u = 0; u < config.U; ++u)
            {
                deploy::DeploymentProblem p;
                for (std::size_t i = 0; i < c->hotspots.size(); ++i)
                    if (d.labels[i] == u)
                        p.hotspots.push_back(c->hotspots[i]);
                p.N = N;
                p.kappa = s.kappa();
                p.b = s.boresight_b;
                p.budget = d.budgets[static_cast<std::size_t>(u)];
                p.ceiling_h = s.ceiling_h;
                const Point3 head = d.heads[static_cast<std::size_t>(u)];
                deploy::DeploymentResult r;
                if (p.hotspots.empty())
                {
                    // idle stripe: parked at its head, no beams
                    r.method = d.method;
                    r.layout = deploy::polygon_layout({head.x, head.y, s.ceiling_h}, N, p.kappa);
                    r.raw_layout = r.layout;
                    r.converged = true;
                    r.message = "no hotspots assigned";
                }
                else
                    r = deploy::deploy(d.method, p, head, config.deploy);
                if (!spacing_report(r.layout).feasible(p.kappa))
                    throw std::runtime_error("stripe " + std::to_string(u) + ": " +
                                             (r.message.empty() ? "infeasible layout" : r.message));
                d.iterations = std::max(d.iterations, r.iterations);
                d.stripes.push_back(std::move(r));
            }
        }
        catch (const std::exception &e)
        {
            d.status = sanitize(e.what());
        }
        d.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    });
    return out;
}

std::vector<ResultRow> run_evaluation(const ExperimentConfig &config, const std::vector<ClusterRecord> &clusters,
                                      const std::vector<DeployRecord> &deployments,
                                      const std::filesystem::path &cell_dir)
{
    const auto grid = config.grid();
    const std::string axis = to_string(config.axis);
    struct Cell
    {
        std::size_t seed_index, grid_index, method_index, precoder_index;
        std::vector<ResultRow> rows;
    };
    std::vector<Cell> cells;
    for (std::size_t si = 0; si < config.seeds.size(); ++si)
        for (std::size_t g = 0; g < grid.size(); ++g)
            for (std::size_t m = 0; m < config.methods.size(); ++m)
                for (std::size_t q = 0; q < config.precoders.size(); ++q)
                    cells.push_back({si, g, m, q, {}});
    if (!cell_dir.empty())
        std::filesystem::create_directories(cell_dir);

    parallel_for(cells.size(), config.workers, [&](std::size_t k) {
        Cell &cell = cells[k];
        const std::string &method = config.methods[cell.method_index];
        const auto kind = config.precoders[cell.precoder_index];
        const double value = grid[cell.grid_index];
        std::vector<double> samples;
        std::string status = "ok";
        const DeployRecord *d = nullptr;
        try
        {
            d = find_deployment(deployments, cell.seed_index, deploy_grid_index(config, cell.grid_index), method);
            if (!d)
                throw std::runtime_error("no deployment for this cell");
            if (d->status != "ok")
                status = d->status;
            else
            {
                const Scenario s = cell_scenario(config, cell.seed_index, value);
                const ClusterRecord *c = find_cluster(clusters, cell.seed_index, s.boresight_b);
                if (!c)
                    throw std::runtime_error("no clustering for this seed and boresight gain");
                const auto result =
                    eval::evaluate_min_power(eval_setup(s, *d, c->hotspots), kind, eval_options(config, cell.seed_index, value));
                samples = result.samples;
            }
        }
        catch (const std::exception &e)
        {
            status = sanitize(e.what());
        }
        for (int r = 0; r < config.draws; ++r)
        {
            ResultRow row;
            row.sweep_axis = axis;
            row.sweep_value = value;
            row.method = method;
            row.precoder = eval::to_string(kind);
            row.draw = static_cast<int>(cell.seed_index) * config.draws + r;
            if (status == "ok")
                row.min_power_w = samples[static_cast<std::size_t>(r)];
            if (d && config.record_runtime)
                row.runtime_s = d->runtime_s;
            row.iterations = d ? d->iterations : 0;
            row.status = status;
            cell.rows.push_back(std::move(row));
        }
        if (!cell_dir.empty())
        {
            std::ostringstream name;
            name << "cell_" << k << ".csv";
            write_file(cell_dir / name.str(), rows_to_csv(cell.rows));
        }
    });

    // single-writer merge in grid order
    std::sort(cells.begin(), cells.end(), [](const Cell &a, const Cell &b) {
        return std::tie(a.grid_index, a.method_index, a.precoder_index, a.seed_index) <
               std::tie(b.grid_index, b.method_index, b.precoder_index, b.seed_index);
    });
    std::vector<ResultRow> rows;
    for (auto &cell : cells)
        for (auto &r : cell.rows)
            rows.push_back(std::move(r));
    return rows;
}

RunReport run_experiment(const ExperimentConfig &config, const std::filesystem::path &cell_dir)
{
    config.validate();
    RunReport report;
    report.clusters = run_clustering(config);
    report.deployments = run_deployment(config, report.clusters);
    report.rows = run_evaluation(config, report.clusters, report.deployments, cell_dir);
    report.failed_cells = count_failed_cells(report.deployments, report.rows);
    return report;
}

int count_failed_cells(const std::vector<DeployRecord> &deployments, const std::vector<ResultRow> &rows)
{
    int failed = 0;
    // failed deployments already show up as failed rows once evaluated
    if (rows.empty())
    {
        for (const auto &d : deployments)
            failed += d.status != "ok";
        return failed;
    }
    std::map<std::tuple<std::string, std::string, std::string>, bool> cells;
    for (const auto &r : rows)
    {
        auto &bad = cells[{format_double(r.sweep_value), r.method, r.precoder}];
        bad = bad || r.status != "ok";
    }
    for (const auto &[key, bad] : cells)
        failed += bad;
    return failed;
}

std::string format_double(double v)
{
    if (std::isnan(v))
        return "NA";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string rows_to_csv(const std::vector<ResultRow> &rows)
{
    std::string out = csv_header;
    out += '\n';
    for (const auto &r : rows)
    {
        out += r.sweep_axis + ',' + format_double(r.sweep_value) + ',' + r.method + ',' + r.precoder + ',' +
               std::to_string(r.draw) + ',' + (r.min_power_w ? format_double(*r.min_power_w) : "NA") + ',' +
               (r.runtime_s ? format_double(*r.runtime_s) : "NA") + ',' + std::to_string(r.iterations) + ',' +
               r.status + '\n';
    }
    return out;
}

std::vector<ResultRow> parse_rows_csv(const std::string &text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != csv_header)
        throw std::runtime_error("results CSV: unexpected header");
    std::vector<ResultRow> rows;
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        const auto f = split_csv_line(line);
        if (f.size() != 9)
            throw std::runtime_error("results CSV: expected 9 fields in '" + line + "'");
        ResultRow r;
        r.sweep_axis = f[0];
        r.sweep_value = parse_double(f[1]);
        r.method = f[2];
        r.precoder = f[3];
        r.draw = std::stoi(f[4]);
        if (f[5] != "NA")
            r.min_power_w = parse_double(f[5]);
        if (f[6] != "NA")
            r.runtime_s = parse_double(f[6]);
        r.iterations = std::stoi(f[7]);
        r.status = f[8];
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<SummaryCell> summarize(const std::vector<ResultRow> &rows)
{
    std::vector<SummaryCell> cells;
    std::vector<std::vector<double>> samples;
    for (const auto &r : rows)
    {
        auto same = [&](const SummaryCell &c) {
            return c.sweep_axis == r.sweep_axis && format_double(c.sweep_value) == format_double(r.sweep_value) &&
                   c.method == r.method && c.precoder == r.precoder;
        };
        auto it = std::find_if(cells.begin(), cells.end(), same);
        std::size_t k = static_cast<std::size_t>(it - cells.begin());
        if (it == cells.end())
        {
            cells.push_back({r.sweep_axis, r.sweep_value, r.method, r.precoder});
            samples.emplace_back();
        }
        if (r.min_power_w)
            samples[k].push_back(*r.min_power_w);
        else
            ++cells[k].failures;
    }
    for (std::size_t k = 0; k < cells.size(); ++k)
    {
        const auto &s = samples[k];
        auto &c = cells[k];
        c.samples = static_cast<int>(s.size());
        if (s.empty())
        {
            c.mean = c.min = c.std = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        double sum = 0.0;
        for (double v : s)
            sum += v;
        c.mean = sum / static_cast<double>(s.size());
        c.min = *std::min_element(s.begin(), s.end());
        double ss = 0.0;
        for (double v : s)
            ss += (v - c.mean) * (v - c.mean);
        c.std = s.size() > 1 ? std::sqrt(ss / static_cast<double>(s.size() - 1)) : 0.0;
    }
    return cells;
}

std::string summary_to_csv(const std::vector<SummaryCell> &cells)
{
    std::string out = "sweep_axis,sweep_value,method,precoder,samples,failures,mean_min_power_w,min_min_power_w,"
                      "std_min_power_w\n";
    for (const auto &c : cells)
        out += c.sweep_axis + ',' + format_double(c.sweep_value) + ',' + c.method + ',' + c.precoder + ',' +
               std::to_string(c.samples) + ',' + std::to_string(c.failures) + ',' + format_double(c.mean) + ',' +
               format_double(c.min) + ',' + format_double(c.std) + '\n';
    return out;
}

std::string layout_to_json(const StripeLayout &layout)
{
    return layout_value(layout).dump();
}

StripeLayout layout_from_json(const std::string &text)
{
    try
    {
        return layout_from_value(json::parse(text));
    }
    catch (const json::exception &e)
    {
        throw std::runtime_error(std::string("layout JSON: ") + e.what());
    }
}

std::string clusters_to_json(const std::vector<ClusterRecord> &clusters)
{
    json a = json::array();
    for (const auto &c : clusters)
    {
        json assignment = json::array();
        for (Eigen::Index i = 0; i < c.solution.assignment.rows(); ++i)
        {
            std::vector<double> row(static_cast<std::size_t>(c.solution.assignment.cols()));
            for (Eigen::Index u = 0; u < c.solution.assignment.cols(); ++u)
                row[static_cast<std::size_t>(u)] = c.solution.assignment(i, u);
            assignment.push_back(row);
        }
        a.push_back({{"seed_index", c.seed_index},
                     {"boresight_b", c.b},
                     {"status", c.status},
                     {"hotspots", hotspots_json(c.hotspots)},
                     {"assignment", assignment},
                     {"labels", c.status == "ok" ? json(c.solution.labels()) : json::array()},
                     {"heads", points_json(c.solution.heads)},
                     {"objective", c.solution.objective},
                     {"relaxed_history", c.solution.relaxed_history},
                     {"chebyshev_history", c.solution.chebyshev_history},
                     {"iterations", c.solution.iterations}});
    }
    return a.dump(1);
}

std::vector<ClusterRecord> clusters_from_json(const std::string &text)
{
    std::vector<ClusterRecord> out;
    try
    {
        for (const auto &j : json::parse(text))
        {
            ClusterRecord c;
            c.seed_index = j.at("seed_index").get<std::size_t>();
            c.b = j.at("boresight_b").get<double>();
            c.status = j.at("status").get<std::string>();
            c.hotspots = hotspots_from(j.at("hotspots"));
            const auto rows = j.at("assignment").get<std::vector<std::vector<double>>>();
            const Eigen::Index U = rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size());
            c.solution.assignment.resize(static_cast<Eigen::Index>(rows.size()), U);
            for (std::size_t i = 0; i < rows.size(); ++i)
                for (Eigen::Index u = 0; u < U; ++u)
                    c.solution.assignment(static_cast<Eigen::Index>(i), u) = rows[i].at(static_cast<std::size_t>(u));
            c.solution.heads = points_from(j.at("heads"));
            c.solution.objective = j.at("objective").get<double>();
            c.solution.relaxed_history = j.at("relaxed_history").get<std::vector<double>>();
            c.solution.chebyshev_history = j.at("chebyshev_history").get<std::vector<double>>();
            c.solution.iterations = j.at("iterations").get<int>();
            out.push_back(std::move(c));
        }
    }
    catch (const json::exception &e)
    {
        throw std::runtime_error(std::string("clusters JSON: ") + e.what());
    }
    return out;
}

std::string deployments_to_json(const ExperimentConfig &config, const std::vector<ClusterRecord> &clusters,
                                const std::vector<DeployRecord> &deployments)
{
    const auto grid = config.grid();
    json a = json::array();
    for (const auto &d : deployments)
    {
        json stripes = json::array();
        for (const auto &r : d.stripes)
            stripes.push_back(result_json(r));
        json users = json::array();
        json hotspots = json::array();
        const double value = grid[d.grid_index];
        if (d.status == "ok")
        {
            try
            {
                const Scenario s = cell_scenario(config, d.seed_index, value);
                if (const ClusterRecord *c = find_cluster(clusters, d.seed_index, s.boresight_b))
                {
                    hotspots = hotspots_json(c->hotspots);
                    users = points_json(eval::draw_users(eval_setup(s, d, c->hotspots),
                                                         eval_options(config, d.seed_index, value), 0));
                }
            }
            catch (const std::exception &)
            {
                users = json::array();
            }
        }
        a.push_back({{"seed_index", d.seed_index},
                     {"grid_index", d.grid_index},
                     {"sweep_axis", to_string(config.axis)},
                     {"sweep_value", std::isnan(value) ? json(nullptr) : json(value)},
                     {"method", d.method},
                     {"status", d.status},
                     {"iterations", d.iterations},
                     {"hotspots", hotspots},
                     {"labels", d.labels},
                     {"heads", points_json(d.heads)},
                     {"budgets", d.budgets},
                     {"users_draw0", users},
                     {"stripes", stripes}});
    }
    return a.dump(1);
}

std::vector<DeployRecord> deployments_from_json(const std::string &text)
{
    std::vector<DeployRecord> out;
    try
    {
        for (const auto &j : json::parse(text))
        {
            DeployRecord d;
            d.seed_index = j.at("seed_index").get<std::size_t>();
            d.grid_index = j.at("grid_index").get<std::size_t>();
            d.method = j.at("method").get<std::string>();
            d.status = j.at("status").get<std::string>();
            d.iterations = j.at("iterations").get<int>();
            d.labels = j.at("labels").get<std::vector<int>>();
            d.heads = points_from(j.at("heads"));
            d.budgets = j.at("budgets").get<std::vector<double>>();
            for (const auto &r : j.at("stripes"))
                d.stripes.push_back(result_from(r));
            out.push_back(std::move(d));
        }
    }
    catch (const json::exception &e)
    {
        throw std::runtime_error(std::string("layouts JSON: ") + e.what());
    }
    return out;
}

void emit_report(const std::vector<ResultRow> &rows, const std::filesystem::path &outdir)
{
    if (rows.empty())
        throw std::runtime_error("emit_report: the result table is empty");
    std::error_code ec;
    std::filesystem::create_directories(outdir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory " + outdir.string() + ": " + ec.message());
    write_file(outdir / "summary.csv", summary_to_csv(summarize(rows)));
    write_file(outdir / "plot.py", R"PY(#!/usr/bin/env python3
# Plots the emitted summary.csv and layouts.json of one run directory.
import json
import os
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd

run = sys.argv[1] if len(sys.argv) > 1 else os.path.dirname(os.path.abspath(__file__))
summary = pd.read_csv(os.path.join(run, "summary.csv"), na_values=["NA"])

for (axis, precoder), part in summary.groupby(["sweep_axis", "precoder"]):
    fig, ax = plt.subplots(figsize=(6, 4))
    for method, m in part.groupby("method"):
        m = m.sort_values("sweep_value")
        if axis == "none":
            ax.bar(method, m["mean_min_power_w"].iloc[0] * 1e3)
        else:
            ax.errorbar(m["sweep_value"], m["mean_min_power_w"] * 1e3, yerr=m["std_min_power_w"] * 1e3,
                        marker="o", capsize=3, label=method)
    ax.set_ylabel("mean min received power [mW]")
    if axis != "none":
        ax.set_xlabel(axis)
        ax.legend()
    ax.set_title(f"{precoder.upper()} precoders")
    fig.tight_layout()
    fig.savefig(os.path.join(run, f"min_power_{axis}_{precoder}.png"), dpi=150)
    plt.close(fig)

layouts_path = os.path.join(run, "layouts.json")
if os.path.exists(layouts_path):
    with open(layouts_path) as f:
        layouts = json.load(f)
    shown = {}
    for cell in layouts:
        if cell["status"] == "ok" and cell["seed_index"] == 0 and cell["grid_index"] == 0:
            shown.setdefault(cell["method"], cell)
    if shown:
        fig, axes = plt.subplots(1, len(shown), figsize=(4.5 * len(shown), 4.5), squeeze=False)
        for ax, (method, cell) in zip(axes[0], sorted(shown.items())):
            hs = cell["hotspots"]
            ax.scatter([h["center"][0] for h in hs], [h["center"][1] for h in hs], c=cell["labels"],
                       cmap="tab10", marker="x", label="hotspots")
            us = cell["users_draw0"]
            if us:
                ax.scatter([u[0] for u in us], [u[1] for u in us], s=8, c="gray", label="users")
            for stripe in cell["stripes"]:
                el = stripe["layout"]["elements"]
                ax.plot([e[0] for e in el], [e[1] for e in el], ".-", ms=2, lw=0.8)
            ax.set_title(method)
            ax.set_aspect("equal")
        fig.tight_layout()
        fig.savefig(os.path.join(run, "layouts.png"), dpi=150)
        plt.close(fig)
)PY");
}

std::string read_file(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out)
        throw std::runtime_error("write failed for " + path.string());
}

} // namespace stripeplan::exp

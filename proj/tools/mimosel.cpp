// SPDX-License-Identifier: Apache-2.0
//
// mimosel: Monte Carlo simulator for base-station association in massive MIMO
// Copyright (C) 2026 The mimosel authors
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

// Command-line front end: run experiments, replay drops, run check suites.
//
// Exit codes: 0 success, 1 validation error, 2 runtime or drop failure,
// 3 check-suite failure.

#include "mimosel/checks.hpp"
#include "mimosel/errors.hpp"
#include "mimosel/harness.hpp"
#include "mimosel/metrics.hpp"
#include "mimosel/plan_io.hpp"
#include "mimosel/simd/kernels.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace mimosel;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitCheck = 3;

struct CommonOptions {
    std::string config;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    bool quiet = false;
};

ExperimentPlan resolve_plan(const CommonOptions& opt)
{
    std::ifstream in(opt.config);
    if (!in)
        throw Error(ErrorKind::InvalidConfig, "config: cannot open '" + opt.config + "'");
    nlohmann::json doc;
    try
    {
        doc = nlohmann::json::parse(in, nullptr, true, true);
    }
    catch (const nlohmann::json::parse_error& e)
    {
        throw Error(ErrorKind::InvalidConfig, "config: '" + opt.config + "' is not valid JSON (" + e.what() + ")");
    }
    for (const auto& o : opt.overrides)
        apply_override(doc, o);
    if (opt.seed)
        doc["seed"] = *opt.seed;
    return plan_from_json(doc);
}

fs::path output_dir(const std::string& flag)
{
    if (!flag.empty())
        return flag;
    if (const char* env = std::getenv("MIMOSEL_OUT_DIR"))
        return env;
    return ".";
}

std::ofstream open_output(const fs::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorKind::InvalidConfig, "out: cannot create '" + path.string() + "'");
    return out;
}

int cmd_run(const CommonOptions& opt, const std::string& out_flag, std::size_t workers)
{
    const ExperimentPlan plan = resolve_plan(opt);

    // Every output path must be creatable before any computation starts.
    const fs::path dir = output_dir(out_flag);
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path results_path = dir / plan.output;
    const fs::path stem = results_path.parent_path() / results_path.stem();
    const fs::path failures_path = stem.string() + "_failed.csv";
    const fs::path drops_path = stem.string() + "_drops.csv";
    std::ofstream results = open_output(results_path);
    std::ofstream failures = open_output(failures_path);
    std::ofstream drops = open_output(drops_path);

    if (!opt.quiet)
        std::cerr << "running " << plan.sweep_values.size() << " sweep points x " << plan.num_drops
                  << " drops (" << simd::to_string(simd::kernels().backend) << " kernels, " << workers
                  << " workers)\n";

    const ExperimentResult result = run_experiment(plan, workers);
    write_results_csv(results, result.rows);
    write_failures_csv(failures, result.failures);
    write_drops_csv(drops, result.drops);

    if (!opt.quiet)
    {
        std::printf("%-8s %-15s %12s %10s %8s\n", to_string(plan.sweep).data(), "algorithm", "sum-rate", "stderr",
                    "drops");
        for (const auto& r : result.rows)
            std::printf("%-8s %-15s %12s %10s %8zu\n", format_value(r.sweep_value).c_str(),
                        std::string(to_string(r.algorithm)).c_str(), format_value(r.mean_sum_rate).c_str(),
                        format_value(r.stderr_sum_rate).c_str(), r.drops);
        std::printf("wrote %s\n", results_path.string().c_str());
        if (!result.failures.empty())
            std::printf("%zu failed (drop, algorithm) pairs logged to %s\n", result.failures.size(),
                        failures_path.string().c_str());
    }
    return result.failures.empty() ? kExitOk : kExitRuntime;
}

void print_scores(const SelectionResult& sel)
{
    std::printf("  scores (rows: clusters, cols: BSs)\n");
    for (arma::uword c = 0; c < sel.scores.n_rows; ++c)
    {
        std::printf("   ");
        for (arma::uword l = 0; l < sel.scores.n_cols; ++l)
            std::printf(" %12s", std::isnan(sel.scores(c, l)) ? "-" : format_value(sel.scores(c, l)).c_str());
        std::printf("\n");
    }
}

int cmd_replay(const CommonOptions& opt, std::size_t sweep, std::size_t drop, const std::string& algorithm)
{
    ExperimentPlan plan = resolve_plan(opt);
    if (sweep >= plan.sweep_values.size() || drop >= plan.num_drops)
        throw Error(ErrorKind::UnknownDrop, "sweep " + std::to_string(sweep) + ", drop " + std::to_string(drop) +
                                                " is outside the plan");
    if (!algorithm.empty())
        plan.algorithms = {parse_algorithm(algorithm)};

    const NetworkConfig cfg = plan.config_at(sweep);
    const std::uint64_t seed = drop_seed(plan.base.rng_seed, sweep, drop);
    std::printf("sweep %zu (%s = %s), drop %zu, sub-seed %llu\n", sweep, to_string(plan.sweep).data(),
                format_value(plan.sweep_values[sweep]).c_str(), drop, static_cast<unsigned long long>(seed));

    DropState state;
    try
    {
        state = prepare_drop(cfg, plan.category, seed);
    }
    catch (const Error& e)
    {
        std::printf("error_kind: %s\n%s\n", to_string(e.kind()).data(), e.what());
        return kExitRuntime;
    }
    std::printf("scenario: %s\n", scenario_to_json(state.scenario).dump().c_str());

    bool failed = false;
    for (Algorithm a : plan.algorithms)
    {
        std::printf("\n[%s]\n", to_string(a).data());
        try
        {
            if (plan.draws_per_drop != 1)
                std::printf("  note: replay shows draw 0 of %zu\n", plan.draws_per_drop);
            const SelectionResult sel = run_algorithm(a, state, plan.max_enumeration, plan.allow_unserved);
            print_scores(sel);
            std::printf("  assignment:");
            for (auto l : sel.assignment.cluster_to_bs)
                if (l == kUnserved)
                    std::printf(" -");
                else
                    std::printf(" %zu", l);
            std::printf("\n  objective: %s\n", format_value(sel.objective).c_str());

            const auto precoders = precoder_set_from(state.candidates, sel.assignment.cluster_to_bs);
            const auto metrics = compute_sinr(state.scenario, state.realization, precoders, cfg.noise_power);
            std::printf("  %7s %4s %3s %12s %12s %12s\n", "cluster", "user", "bs", "sinr", "slnr", "rate");
            for (std::size_t c = 0; c < precoders.clusters.size(); ++c)
            {
                const auto slnr = compute_slnr(state.scenario, state.realization, c, precoders.clusters[c],
                                               cfg.noise_power);
                for (const auto& m : metrics)
                    if (m.cluster == c)
                        std::printf("  %7zu %4zu %3zu %12s %12s %12s\n", m.cluster, m.user, m.bs,
                                    format_value(m.sinr).c_str(), format_value(slnr[m.user].slnr).c_str(),
                                    format_value(m.rate).c_str());
            }
            std::printf("  sum_rate: %s\n", format_value(sum_rate(metrics, cfg.num_clusters).system).c_str());
        }
        catch (const Error& e)
        {
            std::printf("  error_kind: %s\n  %s\n", to_string(e.kind()).data(), e.what());
            failed = true;
        }
    }
    return failed ? kExitRuntime : kExitOk;
}

int cmd_check(const std::string& suite)
{
    return run_check(suite, std::cout) ? kExitOk : kExitCheck;
}

int cmd_presets(const std::string& name)
{
    if (name.empty())
    {
        for (const auto& n : preset_names())
            std::printf("%s\n", n.c_str());
        return kExitOk;
    }
    std::printf("%s\n", preset(name).dump(2).c_str());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"mimosel: Monte Carlo base-station association for multi-cell massive MIMO"};
    app.require_subcommand(1);

    CommonOptions common;
    std::string out_flag;
    std::size_t workers = 1;

    auto* run = app.add_subcommand("run", "Run a Monte Carlo experiment and write CSV results");
    run->add_option("--config", common.config, "Experiment plan (JSON)")->required();
    run->add_option("--set", common.overrides, "Override a plan key (key=value, repeatable)");
    run->add_option("--out", out_flag, "Output directory (default: $MIMOSEL_OUT_DIR or .)");
    run->add_option("--seed", common.seed, "Master seed");
    run->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    run->add_flag("--quiet", common.quiet, "Suppress the summary table");

    std::size_t sweep = 0, drop = 0;
    std::string algorithm;
    auto* replay = app.add_subcommand("replay", "Re-execute one drop and dump per-user metrics");
    replay->add_option("--config", common.config, "Experiment plan (JSON)")->required();
    replay->add_option("--set", common.overrides, "Override a plan key (key=value, repeatable)");
    replay->add_option("--seed", common.seed, "Master seed");
    replay->add_option("--sweep", sweep, "Sweep index")->required();
    replay->add_option("--drop", drop, "Drop index")->required();
    replay->add_option("--algorithm", algorithm, "Only this algorithm");
    replay->add_flag("--quiet", common.quiet, "Accepted for symmetry; replay always prints");

    std::string suite;
    auto* check = app.add_subcommand("check", "Run a named invariant suite");
    check->add_option("suite", suite, "covariance | precoding | theorem1 | laslnr-bound | ordering")->required();

    std::string preset_name;
    auto* presets = app.add_subcommand("presets", "List presets or print one as a plan file");
    presets->add_option("name", preset_name, "Preset to print");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try
    {
        if (*run)
            return cmd_run(common, out_flag, workers);
        if (*replay)
            return cmd_replay(common, sweep, drop, algorithm);
        if (*check)
            return cmd_check(suite);
        if (*presets)
            return cmd_presets(preset_name);
    }
    catch (const Error& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        switch (e.kind())
        {
        case ErrorKind::InvalidConfig:
        case ErrorKind::UnknownSuite:
        case ErrorKind::UnknownDrop:
            return kExitValidation;
        default:
            return kExitRuntime;
        }
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}

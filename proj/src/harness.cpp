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

#include "mimosel/harness.hpp"

#include "mimosel/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <thread>
#include <tuple>

namespace mimosel {

std::string_view to_string(SweepVariable v)
{
    return v == SweepVariable::PowerDb ? "P_t_dB" : "C";
}

SweepVariable parse_sweep_variable(std::string_view text)
{
    if (text == "P_t_dB")
        return SweepVariable::PowerDb;
    if (text == "C")
        return SweepVariable::Clusters;
    throw Error(ErrorKind::InvalidConfig, "sweep_var: expected 'P_t_dB' or 'C', got '" + std::string(text) + "'");
}

void ExperimentPlan::validate() const
{
    if (num_drops < 1)
        throw Error(ErrorKind::InvalidConfig, "num_drops: must be >= 1");
    if (draws_per_drop < 1)
        throw Error(ErrorKind::InvalidConfig, "draws_per_drop: must be >= 1");
    if (sweep_values.empty())
        throw Error(ErrorKind::InvalidConfig, "sweep_values: must not be empty");
    for (std::size_t i = 1; i < sweep_values.size(); ++i)
        if (!(sweep_values[i] > sweep_values[i - 1]))
            throw Error(ErrorKind::InvalidConfig, "sweep_values: must be strictly increasing");
    if (algorithms.empty())
        throw Error(ErrorKind::InvalidConfig, "algorithms: must not be empty");
    if (sweep == SweepVariable::Clusters)
        for (double v : sweep_values)
            if (v < 1.0 || v != std::floor(v))
                throw Error(ErrorKind::InvalidConfig, "sweep_values: cluster counts must be positive integers");
    for (std::size_t i = 0; i < sweep_values.size(); ++i)
        config_at(i).validate();
}

NetworkConfig ExperimentPlan::config_at(std::size_t sweep_index) const
{
    NetworkConfig cfg = base;
    const double v = sweep_values.at(sweep_index);
    if (sweep == SweepVariable::PowerDb)
        cfg.per_user_power = db_to_linear(v) * cfg.noise_power;
    else
        cfg.num_clusters = static_cast<std::size_t>(v);
    return cfg;
}

DropState prepare_drop(const NetworkConfig& config, PrebeamformerCategory category, std::uint64_t seed,
                       std::size_t draw)
{
    DropState s;
    s.seed = seed;
    Rng geometry = make_stream(seed, Stream::Geometry);
    s.scenario = place_network(config, geometry);
    s.model = build_channel_model(s.scenario);
    s.prebeamformers = build_prebeamformers(s.scenario, s.model, category);
    redraw_channels(s, draw);
    return s;
}

void redraw_channels(DropState& state, std::size_t draw)
{
    Rng channel = make_stream(state.seed, Stream::Channel, draw);
    state.realization = sample_channels(state.model, state.scenario.config.users_per_cluster, channel);
    state.candidates = build_candidates(state.scenario, state.prebeamformers, state.realization);
}

SelectionResult run_algorithm(Algorithm algorithm, const DropState& state, std::size_t max_enumeration,
                              bool allow_unserved)
{
    const double noise = state.scenario.config.noise_power;
    switch (algorithm)
    {
    case Algorithm::Exhaustive:
        return exhaustive_sinr_select(state.scenario, state.realization, state.candidates, noise, max_enumeration,
                                      allow_unserved);
    case Algorithm::GreedySlnr:
        return greedy_slnr_select(state.scenario, state.realization, state.candidates, noise, allow_unserved);
    case Algorithm::GreedyLaslnr:
        return greedy_laslnr_select(state.scenario, state.model, state.prebeamformers, allow_unserved);
    case Algorithm::LargestEnergy:
        return largest_energy_select(state.scenario, state.realization, state.candidates, allow_unserved);
    case Algorithm::Random: {
        Rng rng = make_stream(state.seed, Stream::RandomSelection);
        return random_select(state.scenario, state.candidates, rng, allow_unserved);
    }
    }
    throw Error(ErrorKind::InvalidConfig, "unknown algorithm");
}

namespace {

double system_rate(const DropState& state, const Assignment& assignment)
{
    const auto precoders = precoder_set_from(state.candidates, assignment.cluster_to_bs);
    const auto metrics =
        compute_sinr(state.scenario, state.realization, precoders, state.scenario.config.noise_power);
    return sum_rate(metrics, state.scenario.num_clusters()).system;
}

} // namespace

DropOutcome run_drop(const ExperimentPlan& plan, std::size_t sweep_index, std::size_t drop)
{
    DropOutcome out;
    out.sweep_index = sweep_index;
    out.sweep_value = plan.sweep_values.at(sweep_index);
    out.drop = drop;
    out.seed = drop_seed(plan.base.rng_seed, sweep_index, drop);

    const NetworkConfig cfg = plan.config_at(sweep_index);
    out.num_clusters = cfg.num_clusters;
    for (Algorithm a : plan.algorithms)
        out.algorithms.push_back({a, std::nullopt, std::nullopt, {}});

    auto record_all = [&](const Error& e) {
        for (auto& a : out.algorithms)
            if (!a.error)
            {
                a.sum_rate.reset();
                a.error = e.kind();
                a.message = e.what();
            }
    };

    DropState state;
    try
    {
        state = prepare_drop(cfg, plan.category, out.seed, 0);
    }
    catch (const Error& e)
    {
        record_all(e);
        return out;
    }

    std::vector<double> totals(plan.algorithms.size(), 0.0);
    for (std::size_t draw = 0; draw < plan.draws_per_drop; ++draw)
    {
        if (draw > 0)
        {
            try
            {
                redraw_channels(state, draw);
            }
            catch (const Error& e)
            {
                record_all(e);
                return out;
            }
        }
        for (std::size_t i = 0; i < plan.algorithms.size(); ++i)
        {
            auto& a = out.algorithms[i];
            if (a.error)
                continue;
            try
            {
                const auto sel = run_algorithm(a.algorithm, state, plan.max_enumeration, plan.allow_unserved);
                totals[i] += system_rate(state, sel.assignment);
            }
            catch (const Error& e)
            {
                a.error = e.kind();
                a.message = e.what();
            }
        }
    }
    for (std::size_t i = 0; i < plan.algorithms.size(); ++i)
        if (!out.algorithms[i].error)
            out.algorithms[i].sum_rate = totals[i] / double(plan.draws_per_drop);
    return out;
}

std::vector<ResultRow> aggregate(std::span<const DropSample> samples)
{
    if (samples.empty())
        throw Error(ErrorKind::EmptyInput, "no samples to aggregate");

    std::vector<DropSample> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end(), [](const DropSample& a, const DropSample& b) {
        return std::tie(a.sweep_value, a.algorithm, a.drop) < std::tie(b.sweep_value, b.algorithm, b.drop);
    });

    std::vector<ResultRow> rows;
    std::size_t begin = 0;
    while (begin < sorted.size())
    {
        std::size_t end = begin;
        while (end < sorted.size() && sorted[end].sweep_value == sorted[begin].sweep_value &&
               sorted[end].algorithm == sorted[begin].algorithm)
            ++end;

        const double n = double(end - begin);
        double sum = 0.0, per_cluster = 0.0;
        for (std::size_t i = begin; i < end; ++i)
        {
            sum += sorted[i].sum_rate;
            per_cluster += sorted[i].sum_rate / double(sorted[i].num_clusters);
        }
        const double mean = sum / n;
        double ss = 0.0;
        for (std::size_t i = begin; i < end; ++i)
            ss += (sorted[i].sum_rate - mean) * (sorted[i].sum_rate - mean);

        ResultRow row;
        row.sweep_value = sorted[begin].sweep_value;
        row.algorithm = sorted[begin].algorithm;
        row.mean_sum_rate = mean;
        row.stderr_sum_rate = end - begin > 1 ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n) : 0.0;
        row.mean_per_cluster_rate = per_cluster / n;
        row.drops = end - begin;
        rows.push_back(row);
        begin = end;
    }
    return rows;
}

ExperimentResult run_experiment(const ExperimentPlan& plan, std::size_t workers)
{
    plan.validate();
    const std::size_t per_sweep = plan.num_drops;
    const std::size_t jobs = plan.sweep_values.size() * per_sweep;

    ExperimentResult result;
    result.drops.resize(jobs);

    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(std::max<std::size_t>(workers, 1));
    auto work = [&](std::size_t worker) {
        try
        {
            for (std::size_t job = next++; job < jobs; job = next++)
                result.drops[job] = run_drop(plan, job / per_sweep, job % per_sweep);
        }
        catch (...)
        {
            errors[worker] = std::current_exception();
            next = jobs;
        }
    };

    if (workers <= 1)
        work(0);
    else
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(work, w);
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);

    std::vector<DropSample> samples;
    for (const auto& d : result.drops)
        for (const auto& a : d.algorithms)
        {
            if (a.sum_rate)
                samples.push_back({d.sweep_value, a.algorithm, d.drop, d.num_clusters, *a.sum_rate});
            else
                result.failures.push_back({d.sweep_value, d.drop, a.algorithm, a.error.value_or(ErrorKind::NumericalFailure)});
        }

    if (!samples.empty())
        result.rows = aggregate(samples);
    // Rows in (sweep value, plan algorithm order).
    std::stable_sort(result.rows.begin(), result.rows.end(), [&](const ResultRow& a, const ResultRow& b) {
        auto pos = [&](Algorithm alg) {
            return std::find(plan.algorithms.begin(), plan.algorithms.end(), alg) - plan.algorithms.begin();
        };
        return std::make_tuple(a.sweep_value, pos(a.algorithm)) < std::make_tuple(b.sweep_value, pos(b.algorithm));
    });
    for (auto& row : result.rows)
    {
        row.sweep_var = std::string(to_string(plan.sweep));
        row.category = plan.category;
        row.seed = plan.base.rng_seed;
    }
    return result;
}

std::string format_value(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void write_results_csv(std::ostream& out, std::span<const ResultRow> rows)
{
    out << "sweep_var,sweep_value,algorithm,category,mean_sum_rate,stderr,mean_per_cluster_rate,drops,seed\n";
    for (const auto& r : rows)
        out << r.sweep_var << ',' << format_value(r.sweep_value) << ',' << to_string(r.algorithm) << ','
            << to_string(r.category) << ',' << format_value(r.mean_sum_rate) << ','
            << format_value(r.stderr_sum_rate) << ',' << format_value(r.mean_per_cluster_rate) << ',' << r.drops
            << ',' << r.seed << '\n';
}

void write_failures_csv(std::ostream& out, std::span<const FailedDrop> failures)
{
    out << "sweep_value,drop,algorithm,error_kind\n";
    for (const auto& f : failures)
        out << format_value(f.sweep_value) << ',' << f.drop << ',' << to_string(f.algorithm) << ','
            << to_string(f.error) << '\n';
}

void write_drops_csv(std::ostream& out, std::span<const DropOutcome> drops)
{
    out << "sweep_index,sweep_value,drop,sub_seed,algorithm,sum_rate,error_kind\n";
    for (const auto& d : drops)
        for (const auto& a : d.algorithms)
        {
            out << d.sweep_index << ',' << format_value(d.sweep_value) << ',' << d.drop << ',' << d.seed << ','
                << to_string(a.algorithm) << ',';
            if (a.sum_rate)
                out << format_value(*a.sum_rate) << ',';
            else
                out << ',' << to_string(a.error.value_or(ErrorKind::NumericalFailure));
            out << '\n';
        }
}

} // namespace mimosel

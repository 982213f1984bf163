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

#pragma once

#include "mimosel/channel.hpp"
#include "mimosel/errors.hpp"
#include "mimosel/precoding.hpp"
#include "mimosel/scenario.hpp"
#include "mimosel/selection.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mimosel {

enum class SweepVariable { PowerDb, Clusters };

std::string_view to_string(SweepVariable v); // "P_t_dB" / "C"
SweepVariable parse_sweep_variable(std::string_view text);

struct ExperimentPlan {
    NetworkConfig base;
    SweepVariable sweep = SweepVariable::PowerDb;
    std::vector<double> sweep_values{0.0, 10.0, 20.0, 30.0};
    std::vector<Algorithm> algorithms = all_algorithms();
    PrebeamformerCategory category = PrebeamformerCategory::First;
    std::size_t num_drops = 200;
    std::size_t draws_per_drop = 1;
    std::size_t max_enumeration = kDefaultMaxEnumeration;
    bool allow_unserved = false; // clusters without a feasible BS get zero rate instead of failing the drop
    std::string output = "results.csv";

    void validate() const;

    // Network of sweep point i (power or cluster count substituted).
    NetworkConfig config_at(std::size_t sweep_index) const;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

// Everything computed for one drop; consumed by the harness and by replay.
struct DropState {
    std::uint64_t seed = 0;
    Scenario scenario;
    ChannelModel model;
    ChannelRealization realization;
    PrebeamformerTable prebeamformers;
    CandidateTable candidates;
};

// Geometry, statistics, channel draw `draw` and precoder tables of a drop.
DropState prepare_drop(const NetworkConfig& config, PrebeamformerCategory category, std::uint64_t seed,
                       std::size_t draw = 0);

// Redraws channels (and the candidate table) for a prepared geometry.
void redraw_channels(DropState& state, std::size_t draw);

SelectionResult run_algorithm(Algorithm algorithm, const DropState& state, std::size_t max_enumeration,
                              bool allow_unserved = false);

struct AlgorithmOutcome {
    Algorithm algorithm = Algorithm::Random;
    std::optional<double> sum_rate; // system sum-rate, mean over draws
    std::optional<ErrorKind> error;
    std::string message;
};

struct DropOutcome {
    std::size_t sweep_index = 0;
    double sweep_value = 0.0;
    std::size_t drop = 0;
    std::uint64_t seed = 0;
    std::size_t num_clusters = 0;
    std::vector<AlgorithmOutcome> algorithms;
};

DropOutcome run_drop(const ExperimentPlan& plan, std::size_t sweep_index, std::size_t drop);

struct DropSample {
    double sweep_value = 0.0;
    Algorithm algorithm = Algorithm::Random;
    std::size_t drop = 0;
    std::size_t num_clusters = 1;
    double sum_rate = 0.0;
};

struct ResultRow {
    std::string sweep_var;
    double sweep_value = 0.0;
    Algorithm algorithm = Algorithm::Random;
    PrebeamformerCategory category = PrebeamformerCategory::First;
    double mean_sum_rate = 0.0;
    double stderr_sum_rate = 0.0;
    double mean_per_cluster_rate = 0.0;
    std::size_t drops = 0;
    std::uint64_t seed = 0;
};

struct FailedDrop {
    double sweep_value = 0.0;
    std::size_t drop = 0;
    Algorithm algorithm = Algorithm::Random;
    ErrorKind error = ErrorKind::NumericalFailure;
};

// Groups by (sweep value, algorithm): mean, standard error of the mean and
// count. Independent of the order of `samples`. Throws EmptyInput.
std::vector<ResultRow> aggregate(std::span<const DropSample> samples);

struct ExperimentResult {
    std::vector<ResultRow> rows;
    std::vector<FailedDrop> failures;
    std::vector<DropOutcome> drops; // ordered by (sweep, drop)
};

// Drops run on `workers` threads; output is identical for every worker count.
ExperimentResult run_experiment(const ExperimentPlan& plan, std::size_t workers = 1);

// Output formats. Values use 6 significant digits, LF line endings.
std::string format_value(double v);
void write_results_csv(std::ostream& out, std::span<const ResultRow> rows);
void write_failures_csv(std::ostream& out, std::span<const FailedDrop> failures);
void write_drops_csv(std::ostream& out, std::span<const DropOutcome> drops);

} // namespace mimosel

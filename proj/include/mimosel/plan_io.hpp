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

#include "mimosel/harness.hpp"
#include "mimosel/scenario.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace mimosel {

// Experiment plans are flat JSON objects. Lengths are in meters and powers
// are in dB (`P_t_dB`, `noise_power_dB`). Unknown keys are rejected.
//
//   {"num_bs": 3, "num_clusters": 8, "num_antennas": 64, "P_t_dB": 20,
//    "sweep_var": "P_t_dB", "sweep_values": [0, 10, 20, 30],
//    "algorithms": ["greedy-slnr", "random"], "category": "first",
//    "num_drops": 200, "seed": 7, "output": "fig2.csv"}
const std::vector<std::string>& plan_keys();

nlohmann::json plan_to_json(const ExperimentPlan& plan);
ExperimentPlan plan_from_json(const nlohmann::json& doc);

ExperimentPlan load_plan(const std::string& path);

// Applies "key=value" overrides. The value is parsed as JSON when possible,
// otherwise taken as a string; list keys also accept "a,b,c".
void apply_override(nlohmann::json& doc, const std::string& assignment);

// Named presets shipped with the tool.
std::vector<std::string> preset_names();
nlohmann::json preset(const std::string& name);

// Round-trips every double exactly.
nlohmann::json scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const nlohmann::json& doc);

} // namespace mimosel

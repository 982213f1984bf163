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

#include "mimosel/plan_io.hpp"

#include "mimosel/errors.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace mimosel {

using nlohmann::json;

const std::vector<std::string>& plan_keys()
{
    static const std::vector<std::string> keys{
        "cell_radius", "num_bs",      "num_clusters",   "users_per_cluster", "num_antennas",
        "spacing_ratio", "ring_radius", "noise_power_dB", "P_t_dB",            "seed",
        "rank_epsilon", "exact_rank",  "abd_energy_fraction", "ignore_sectors",
        "sweep_var",   "sweep_values", "algorithms",     "category",          "num_drops",
        "draws_per_drop", "max_enumeration", "allow_unserved", "output"};
    return keys;
}

json plan_to_json(const ExperimentPlan& plan)
{
    const auto& b = plan.base;
    json algs = json::array();
    for (auto a : plan.algorithms)
        algs.push_back(std::string(to_string(a)));
    return json{{"cell_radius", b.cell_radius},
                {"num_bs", b.num_bs},
                {"num_clusters", b.num_clusters},
                {"users_per_cluster", b.users_per_cluster},
                {"num_antennas", b.num_antennas},
                {"spacing_ratio", b.spacing_ratio},
                {"ring_radius", b.ring_radius},
                {"noise_power_dB", linear_to_db(b.noise_power)},
                {"P_t_dB", linear_to_db(b.per_user_power / b.noise_power)},
                {"seed", b.rng_seed},
                {"rank_epsilon", b.rank_epsilon},
                {"exact_rank", b.exact_rank},
                {"abd_energy_fraction", b.abd_energy_fraction},
                {"ignore_sectors", b.ignore_sectors},
                {"sweep_var", std::string(to_string(plan.sweep))},
                {"sweep_values", plan.sweep_values},
                {"algorithms", algs},
                {"category", std::string(to_string(plan.category))},
                {"num_drops", plan.num_drops},
                {"draws_per_drop", plan.draws_per_drop},
                {"max_enumeration", plan.max_enumeration},
                {"allow_unserved", plan.allow_unserved},
                {"output", plan.output}};
}

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& reason)
{
    throw Error(ErrorKind::InvalidConfig, key + ": " + reason);
}

template <class T>
T get_as(const json& doc, const std::string& key)
{
    try
    {
        if constexpr (std::is_same_v<T, std::size_t> || std::is_same_v<T, std::uint64_t>)
        {
            if (!doc.at(key).is_number_unsigned())
            {
                if (doc.at(key).is_number() && doc.at(key).get<double>() >= 0 &&
                    doc.at(key).get<double>() == std::floor(doc.at(key).get<double>()))
                    return static_cast<T>(doc.at(key).get<double>());
                bad(key, "expected a non-negative integer");
            }
        }
        else if constexpr (std::is_same_v<T, double>)
        {
            if (!doc.at(key).is_number())
                bad(key, "expected a number");
        }
        else if constexpr (std::is_same_v<T, bool>)
        {
            if (!doc.at(key).is_boolean())
                bad(key, "expected true or false");
        }
        return doc.at(key).get<T>();
    }
    catch (const json::exception& e)
    {
        bad(key, e.what());
    }
}

} // namespace

ExperimentPlan plan_from_json(const json& doc)
{
    if (!doc.is_object())
        throw Error(ErrorKind::InvalidConfig, "plan: expected a JSON object");
    const auto& keys = plan_keys();
    for (const auto& [key, value] : doc.items())
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            bad(key, "unknown key");

    ExperimentPlan plan;
    auto& b = plan.base;
    double pt_db = linear_to_db(b.per_user_power / b.noise_power);
    for (const auto& [key, value] : doc.items())
    {
        if (key == "cell_radius") b.cell_radius = get_as<double>(doc, key);
        else if (key == "num_bs") b.num_bs = get_as<std::size_t>(doc, key);
        else if (key == "num_clusters") b.num_clusters = get_as<std::size_t>(doc, key);
        else if (key == "users_per_cluster") b.users_per_cluster = get_as<std::size_t>(doc, key);
        else if (key == "num_antennas") b.num_antennas = get_as<std::size_t>(doc, key);
        else if (key == "spacing_ratio") b.spacing_ratio = get_as<double>(doc, key);
        else if (key == "ring_radius") b.ring_radius = get_as<double>(doc, key);
        else if (key == "noise_power_dB") b.noise_power = db_to_linear(get_as<double>(doc, key));
        else if (key == "P_t_dB") pt_db = get_as<double>(doc, key);
        else if (key == "seed") b.rng_seed = get_as<std::uint64_t>(doc, key);
        else if (key == "rank_epsilon") b.rank_epsilon = get_as<double>(doc, key);
        else if (key == "exact_rank") b.exact_rank = get_as<bool>(doc, key);
        else if (key == "abd_energy_fraction") b.abd_energy_fraction = get_as<double>(doc, key);
        else if (key == "ignore_sectors") b.ignore_sectors = get_as<bool>(doc, key);
        else if (key == "sweep_var")
        {
            if (!value.is_string())
                bad(key, "expected a string");
            plan.sweep = parse_sweep_variable(value.get<std::string>());
        }
        else if (key == "sweep_values")
        {
            if (!value.is_array())
                bad(key, "expected an array of numbers");
            plan.sweep_values.clear();
            for (const auto& v : value)
            {
                if (!v.is_number())
                    bad(key, "expected an array of numbers");
                plan.sweep_values.push_back(v.get<double>());
            }
        }
        else if (key == "algorithms")
        {
            if (!value.is_array())
                bad(key, "expected an array of algorithm names");
            plan.algorithms.clear();
            for (const auto& v : value)
            {
                if (!v.is_string())
                    bad(key, "expected an array of algorithm names");
                plan.algorithms.push_back(parse_algorithm(v.get<std::string>()));
            }
        }
        else if (key == "category")
        {
            if (!value.is_string())
                bad(key, "expected 'first' or 'second'");
            plan.category = parse_category(value.get<std::string>());
        }
        else if (key == "num_drops") plan.num_drops = get_as<std::size_t>(doc, key);
        else if (key == "draws_per_drop") plan.draws_per_drop = get_as<std::size_t>(doc, key);
        else if (key == "max_enumeration") plan.max_enumeration = get_as<std::size_t>(doc, key);
        else if (key == "allow_unserved") plan.allow_unserved = get_as<bool>(doc, key);
        else if (key == "output")
        {
            if (!value.is_string())
                bad(key, "expected a file name");
            plan.output = value.get<std::string>();
        }
    }
    b.per_user_power = db_to_linear(pt_db) * b.noise_power;
    plan.validate();
    return plan;
}

ExperimentPlan load_plan(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::InvalidConfig, "config: cannot open '" + path + "'");
    json doc;
    try
    {
        doc = json::parse(in, nullptr, true, true);
    }
    catch (const json::parse_error& e)
    {
        throw Error(ErrorKind::InvalidConfig, "config: '" + path + "' is not valid JSON (" + e.what() + ")");
    }
    return plan_from_json(doc);
}

void apply_override(json& doc, const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw Error(ErrorKind::InvalidConfig, "--set: expected key=value, got '" + assignment + "'");
    const std::string key = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    const auto& keys = plan_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
        bad(key, "unknown key");

    json value = json::parse(text, nullptr, false);
    if (value.is_discarded())
    {
        if ((key == "sweep_values" || key == "algorithms") && text.find(',') != std::string::npos)
        {
            value = json::array();
            std::stringstream ss(text);
            std::string item;
            while (std::getline(ss, item, ','))
            {
                json v = json::parse(item, nullptr, false);
                value.push_back(v.is_discarded() ? json(item) : v);
            }
        }
        else
            value = text;
    }
    if ((key == "sweep_values" || key == "algorithms") && !value.is_array())
        value = json::array({value});
    doc[key] = value;
}

std::vector<std::string> preset_names()
{
    return {"desk-fig2-first", "desk-fig2-second", "desk-fig3-first", "desk-fig3-second", "paper-fig2",
            "paper-fig3"};
}

json preset(const std::string& name)
{
    ExperimentPlan plan;
    plan.base.rng_seed = 2024;
    const bool fig3 = name.find("fig3") != std::string::npos;
    if (fig3)
    {
        plan.sweep = SweepVariable::Clusters;
        plan.sweep_values = {2, 4, 6, 8, 10, 12, 14, 16};
        plan.base.per_user_power = db_to_linear(20.0);
        plan.algorithms = {Algorithm::GreedySlnr, Algorithm::GreedyLaslnr, Algorithm::LargestEnergy,
                           Algorithm::Random};
    }
    if (name.find("second") != std::string::npos)
        plan.category = PrebeamformerCategory::Second;
    // Exact BD runs out of null space once many clusters share a sector.
    plan.allow_unserved = true;
    // Narrow rings keep angular spreads in the few-degree range where
    // sectors can host many clusters.
    plan.base.ring_radius = 30.0;

    if (name == "desk-fig2-first" || name == "desk-fig2-second" || name == "desk-fig3-first" ||
        name == "desk-fig3-second")
    {
        plan.output = name + ".csv";
    }
    else if (name == "paper-fig2" || name == "paper-fig3")
    {
        plan.base.num_antennas = 128;
        plan.num_drops = 1000;
        plan.output = name + ".csv";
    }
    else
        throw Error(ErrorKind::InvalidConfig, "preset: unknown preset '" + name + "'");
    return plan_to_json(plan);
}

json scenario_to_json(const Scenario& s)
{
    const auto& c = s.config;
    json clusters = json::array();
    for (const auto& cl : s.clusters)
        clusters.push_back({cl.position.x, cl.position.y});
    return json{{"cell_radius", c.cell_radius},
                {"num_bs", c.num_bs},
                {"users_per_cluster", c.users_per_cluster},
                {"num_antennas", c.num_antennas},
                {"spacing_ratio", c.spacing_ratio},
                {"ring_radius", c.ring_radius},
                {"noise_power", c.noise_power},
                {"per_user_power", c.per_user_power},
                {"rank_epsilon", c.rank_epsilon},
                {"exact_rank", c.exact_rank},
                {"abd_energy_fraction", c.abd_energy_fraction},
                {"ignore_sectors", c.ignore_sectors},
                {"seed", c.rng_seed},
                {"clusters", clusters}};
}

Scenario scenario_from_json(const json& doc)
{
    try
    {
        NetworkConfig c;
        c.cell_radius = doc.at("cell_radius").get<double>();
        c.num_bs = doc.at("num_bs").get<std::size_t>();
        c.users_per_cluster = doc.at("users_per_cluster").get<std::size_t>();
        c.num_antennas = doc.at("num_antennas").get<std::size_t>();
        c.spacing_ratio = doc.at("spacing_ratio").get<double>();
        c.ring_radius = doc.at("ring_radius").get<double>();
        c.noise_power = doc.at("noise_power").get<double>();
        c.per_user_power = doc.at("per_user_power").get<double>();
        c.rank_epsilon = doc.at("rank_epsilon").get<double>();
        c.exact_rank = doc.at("exact_rank").get<bool>();
        c.abd_energy_fraction = doc.at("abd_energy_fraction").get<double>();
        c.ignore_sectors = doc.at("ignore_sectors").get<bool>();
        c.rng_seed = doc.at("seed").get<std::uint64_t>();
        std::vector<Point> positions;
        for (const auto& p : doc.at("clusters"))
            positions.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        c.num_clusters = positions.size();
        c.validate();
        return make_scenario(c, positions);
    }
    catch (const json::exception& e)
    {
        throw Error(ErrorKind::InvalidConfig, std::string("scenario: ") + e.what());
    }
}

} // namespace mimosel

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

#include "mimosel/selection.hpp"

#include "mimosel/errors.hpp"
#include "mimosel/metrics.hpp"
#include "mimosel/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mimosel {

std::string_view to_string(Algorithm algorithm)
{
    switch (algorithm)
    {
    case Algorithm::Exhaustive: return "exhaustive";
    case Algorithm::GreedySlnr: return "greedy-slnr";
    case Algorithm::GreedyLaslnr: return "greedy-laslnr";
    case Algorithm::LargestEnergy: return "largest-energy";
    case Algorithm::Random: return "random";
    }
    return "unknown";
}

Algorithm parse_algorithm(std::string_view text)
{
    for (Algorithm a : all_algorithms())
        if (text == to_string(a))
            return a;
    throw Error(ErrorKind::InvalidConfig, "algorithms: unknown algorithm '" + std::string(text) + "'");
}

const std::vector<Algorithm>& all_algorithms()
{
    static const std::vector<Algorithm> all{Algorithm::Exhaustive, Algorithm::GreedySlnr, Algorithm::GreedyLaslnr,
                                            Algorithm::LargestEnergy, Algorithm::Random};
    return all;
}

std::vector<std::vector<std::size_t>> Assignment::cluster_sets(std::size_t num_bs) const
{
    std::vector<std::vector<std::size_t>> sets(num_bs);
    for (std::size_t c = 0; c < cluster_to_bs.size(); ++c)
        if (cluster_to_bs[c] != kUnserved)
            sets[cluster_to_bs[c]].push_back(c);
    return sets;
}

std::size_t Assignment::unserved() const
{
    return static_cast<std::size_t>(std::count(cluster_to_bs.begin(), cluster_to_bs.end(), kUnserved));
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

[[noreturn]] void no_feasible_bs(std::size_t c)
{
    throw Error(ErrorKind::NoFeasibleBS, "cluster " + std::to_string(c) + " has no feasible in-sector BS");
}

// Row-wise argmax over candidate BSs, lowest index on ties.
template <class Feasible>
SelectionResult argmax_per_cluster(Algorithm algorithm, arma::mat scores, bool allow_unserved, Feasible feasible)
{
    SelectionResult r;
    r.algorithm = algorithm;
    r.assignment.cluster_to_bs.resize(scores.n_rows);
    for (arma::uword c = 0; c < scores.n_rows; ++c)
    {
        bool found = false;
        double best = 0.0;
        for (arma::uword l = 0; l < scores.n_cols; ++l)
        {
            if (!feasible(c, l))
                continue;
            ++r.evaluations;
            if (!found || scores(c, l) > best)
            {
                found = true;
                best = scores(c, l);
                r.assignment.cluster_to_bs[c] = l;
            }
        }
        if (!found)
        {
            if (!allow_unserved)
                no_feasible_bs(c);
            r.assignment.cluster_to_bs[c] = kUnserved;
        }
        r.objective += best;
    }
    r.scores = std::move(scores);
    return r;
}

} // namespace

SelectionResult select_by_scores(Algorithm algorithm, arma::mat scores, bool allow_unserved)
{
    arma::umat candidate(scores.n_rows, scores.n_cols);
    for (arma::uword i = 0; i < scores.n_elem; ++i)
        candidate(i) = std::isnan(scores(i)) ? 0 : 1;
    return argmax_per_cluster(algorithm, std::move(scores), allow_unserved,
                              [&](std::size_t c, std::size_t l) { return candidate(c, l) != 0; });
}

SelectionResult greedy_slnr_select(const Scenario& scenario, const ChannelRealization& realization,
                                   const CandidateTable& candidates, double noise_power, bool allow_unserved)
{
    arma::mat scores(scenario.num_clusters(), scenario.num_bs());
    scores.fill(kNaN);
    for (std::size_t c = 0; c < scenario.num_clusters(); ++c)
        for (std::size_t l = 0; l < scenario.num_bs(); ++l)
            if (candidates.feasible(c, l))
                scores(c, l) = sum_slnr(compute_slnr(scenario, realization, c, candidates.at(c, l), noise_power));

    return argmax_per_cluster(Algorithm::GreedySlnr, std::move(scores), allow_unserved,
                              [&](std::size_t c, std::size_t l) { return candidates.feasible(c, l); });
}

SelectionResult greedy_laslnr_select(const Scenario& scenario, const ChannelModel& model,
                                     const PrebeamformerTable& prebeamformers, bool allow_unserved)
{
    const double users = static_cast<double>(scenario.config.users_per_cluster);
    arma::mat scores(scenario.num_clusters(), scenario.num_bs());
    scores.fill(kNaN);
    for (std::size_t c = 0; c < scenario.num_clusters(); ++c)
        for (std::size_t l = 0; l < scenario.num_bs(); ++l)
            if (prebeamformers.feasible(c, l))
                scores(c, l) = users * compute_laslnr(scenario, model, c, l, prebeamformers.at(c, l));

    return argmax_per_cluster(Algorithm::GreedyLaslnr, std::move(scores), allow_unserved,
                              [&](std::size_t c, std::size_t l) { return prebeamformers.feasible(c, l); });
}

SelectionResult largest_energy_select(const Scenario& scenario, const ChannelRealization& realization,
                                      const CandidateTable& candidates, bool allow_unserved)
{
    const auto& kern = simd::kernels();
    arma::mat scores(scenario.num_clusters(), scenario.num_bs());
    scores.fill(kNaN);
    for (std::size_t c = 0; c < scenario.num_clusters(); ++c)
        for (std::size_t l = 0; l < scenario.num_bs(); ++l)
            if (candidates.feasible(c, l))
            {
                const arma::cx_mat& h = realization.conj_channels(c, l);
                scores(c, l) = kern.norm2(h.memptr(), h.n_elem);
            }

    auto r = argmax_per_cluster(Algorithm::LargestEnergy, std::move(scores), allow_unserved,
                                [&](std::size_t c, std::size_t l) { return candidates.feasible(c, l); });
    r.objective = assignment_sum_sinr(scenario, realization, candidates, r.assignment, scenario.config.noise_power);
    return r;
}

SelectionResult random_select(const Scenario& scenario, const CandidateTable& candidates, Rng& rng,
                              bool allow_unserved)
{
    SelectionResult r;
    r.algorithm = Algorithm::Random;
    r.scores.set_size(scenario.num_clusters(), scenario.num_bs());
    r.scores.fill(kNaN);
    r.assignment.cluster_to_bs.resize(scenario.num_clusters());
    for (std::size_t c = 0; c < scenario.num_clusters(); ++c)
    {
        const auto options = candidates.candidates(c);
        if (options.empty())
        {
            if (!allow_unserved)
                no_feasible_bs(c);
            r.assignment.cluster_to_bs[c] = kUnserved;
            continue;
        }
        std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
        r.assignment.cluster_to_bs[c] = options[pick(rng)];
        for (auto l : options)
            r.scores(c, l) = 1.0 / double(options.size());
        ++r.evaluations;
    }
    return r;
}

double assignment_sum_sinr(const Scenario& scenario, const ChannelRealization& realization,
                           const CandidateTable& candidates, const Assignment& assignment, double noise_power)
{
    const auto metrics =
        compute_sinr(scenario, realization, precoder_set_from(candidates, assignment.cluster_to_bs), noise_power);
    double total = 0.0;
    for (const auto& m : metrics)
        total += m.sinr;
    return total;
}

std::size_t enumeration_size(const CandidateTable& candidates, bool allow_unserved)
{
    std::size_t count = 1;
    for (std::size_t c = 0; c < candidates.num_clusters(); ++c)
    {
        std::size_t options = candidates.candidates(c).size();
        if (options == 0 && allow_unserved)
            options = 1;
        if (options == 0)
            return 0;
        if (count > std::numeric_limits<std::size_t>::max() / options)
            return std::numeric_limits<std::size_t>::max();
        count *= options;
    }
    return count;
}

SelectionResult exhaustive_sinr_select(const Scenario& scenario, const ChannelRealization& realization,
                                       const CandidateTable& candidates, double noise_power,
                                       std::size_t max_enumeration, bool allow_unserved)
{
    const auto& kern = simd::kernels();
    const std::size_t num_clusters = scenario.num_clusters();
    const std::size_t num_bs = scenario.num_bs();
    const std::size_t users = realization.users_per_cluster();
    const std::size_t n = scenario.config.num_antennas;

    std::vector<std::vector<std::size_t>> options(num_clusters);
    for (std::size_t c = 0; c < num_clusters; ++c)
    {
        options[c] = candidates.candidates(c);
        if (options[c].empty())
        {
            if (!allow_unserved)
                no_feasible_bs(c);
            options[c].push_back(kUnserved);
        }
    }
    const std::size_t total = enumeration_size(candidates, allow_unserved);
    if (total > max_enumeration)
        throw Error(ErrorKind::EnumerationTooLarge, std::to_string(total) + " assignments exceed the limit of " +
                                                        std::to_string(max_enumeration));

    // Memoized per-user terms. Precoders do not depend on the assignment, so
    // signal[c,k,l] and cross[c,k,c',l] = sum_k' |h_{c,k}^{l,H} p_{c',k'}^l|^2 are
    // computed once and every assignment is evaluated from the tables.
    auto sig_index = [&](std::size_t c, std::size_t k, std::size_t l) { return (c * users + k) * num_bs + l; };
    auto cross_index = [&](std::size_t c, std::size_t k, std::size_t other, std::size_t l) {
        return ((c * users + k) * num_clusters + other) * num_bs + l;
    };
    std::vector<double> signal(num_clusters * users * num_bs, 0.0);
    std::vector<double> cross(num_clusters * users * num_clusters * num_bs, 0.0);
    for (std::size_t c = 0; c < num_clusters; ++c)
        for (std::size_t l = 0; l < num_bs; ++l)
        {
            if (!scenario.visible(c, l))
                continue;
            const arma::cx_mat& h = realization.conj_channels(c, l);
            for (std::size_t k = 0; k < users; ++k)
            {
                if (candidates.feasible(c, l))
                    signal[sig_index(c, k, l)] =
                        std::norm(kern.dotu(h.colptr(k), candidates.at(c, l).transmit.colptr(k), n));
                for (std::size_t other = 0; other < num_clusters; ++other)
                {
                    if (other == c || !candidates.feasible(other, l))
                        continue;
                    const auto& p = candidates.at(other, l).transmit;
                    cross[cross_index(c, k, other, l)] = kern.gain_sum(h.colptr(k), p.memptr(), n, p.n_cols);
                }
            }
        }

    SelectionResult r;
    r.algorithm = Algorithm::Exhaustive;
    std::vector<std::size_t> digit(num_clusters, 0), current(num_clusters);
    for (std::size_t c = 0; c < num_clusters; ++c)
        current[c] = options[c][0];

    bool have_best = false;
    for (;;)
    {
        double value = 0.0;
        for (std::size_t c = 0; c < num_clusters; ++c)
        {
            const std::size_t l = current[c];
            if (l == kUnserved)
                continue;
            for (std::size_t k = 0; k < users; ++k)
            {
                double interference = 0.0;
                for (std::size_t other = 0; other < num_clusters; ++other)
                    if (other != c && current[other] != kUnserved)
                        interference += cross[cross_index(c, k, other, current[other])];
                value += signal[sig_index(c, k, l)] / (interference + noise_power);
            }
        }
        ++r.evaluations;
        if (!have_best || value > r.objective)
        {
            have_best = true;
            r.objective = value;
            r.assignment.cluster_to_bs = current;
        }

        // Odometer with the last cluster varying fastest: lexicographic order.
        std::size_t pos = num_clusters;
        while (pos > 0)
        {
            --pos;
            if (++digit[pos] < options[pos].size())
            {
                current[pos] = options[pos][digit[pos]];
                break;
            }
            digit[pos] = 0;
            current[pos] = options[pos][0];
            if (pos == 0)
            {
                pos = num_clusters + 1;
                break;
            }
        }
        if (pos == num_clusters + 1 || num_clusters == 0)
            break;
    }

    // Per-cluster sum-SINR of the chosen assignment, in the chosen BS column.
    r.scores.set_size(num_clusters, num_bs);
    r.scores.fill(kNaN);
    for (std::size_t c = 0; c < num_clusters; ++c)
    {
        const std::size_t l = r.assignment.cluster_to_bs[c];
        if (l == kUnserved)
            continue;
        double s = 0.0;
        for (std::size_t k = 0; k < users; ++k)
        {
            double interference = 0.0;
            for (std::size_t other = 0; other < num_clusters; ++other)
                if (other != c && r.assignment.cluster_to_bs[other] != kUnserved)
                    interference += cross[cross_index(c, k, other, r.assignment.cluster_to_bs[other])];
            s += signal[sig_index(c, k, l)] / (interference + noise_power);
        }
        r.scores(c, l) = s;
    }
    return r;
}

} // namespace mimosel

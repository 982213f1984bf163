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
#include "mimosel/precoding.hpp"
#include "mimosel/rng.hpp"
#include "mimosel/scenario.hpp"

#include <armadillo>

#include <cstddef>
#include <string_view>
#include <vector>

namespace mimosel {

enum class Algorithm { Exhaustive, GreedySlnr, GreedyLaslnr, LargestEnergy, Random };

std::string_view to_string(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view text);
const std::vector<Algorithm>& all_algorithms();

// With allow_unserved set, a cluster without any feasible BS is assigned
// kUnserved (zero rate) instead of raising NoFeasibleBS.
struct Assignment {
    std::vector<std::size_t> cluster_to_bs; // kUnserved for clusters left without service

    std::size_t unserved() const;

    // C_1, ..., C_L; unserved clusters belong to no set
    std::vector<std::vector<std::size_t>> cluster_sets(std::size_t num_bs) const;
};

struct SelectionResult {
    Algorithm algorithm = Algorithm::Random;
    Assignment assignment;
    double objective = 0.0;   // sum-SINR, sum-SLNR or sum of K_c * LASLNR depending on the algorithm
    arma::mat scores;         // C x L candidate scores examined; NaN where not a candidate
    std::size_t evaluations = 0;
};

// Per-cluster argmax over a C x L score table; NaN marks a non-candidate.
// Ties go to the lowest BS index. The objective is the sum of chosen scores.
SelectionResult select_by_scores(Algorithm algorithm, arma::mat scores, bool allow_unserved = false);

// Algorithm 1: clusters in index order, each to the BS maximizing its own
// sum-SLNR. Ties go to the lowest BS index.
SelectionResult greedy_slnr_select(const Scenario& scenario, const ChannelRealization& realization,
                                   const CandidateTable& candidates, double noise_power,
                                   bool allow_unserved = false);

// Same loop scored by K_c * LASLNR; needs no channel realization.
SelectionResult greedy_laslnr_select(const Scenario& scenario, const ChannelModel& model,
                                     const PrebeamformerTable& prebeamformers, bool allow_unserved = false);

inline constexpr std::size_t kDefaultMaxEnumeration = 1'000'000;

// Maximizes sum-SINR over every feasible assignment. Ties go to the
// lexicographically smallest assignment. Throws EnumerationTooLarge when the
// number of assignments exceeds max_enumeration.
SelectionResult exhaustive_sinr_select(const Scenario& scenario, const ChannelRealization& realization,
                                       const CandidateTable& candidates, double noise_power,
                                       std::size_t max_enumeration = kDefaultMaxEnumeration,
                                       bool allow_unserved = false);

// Number of feasible assignments of a candidate table. A cluster without
// candidates counts as one option when allow_unserved is set, else as zero.
std::size_t enumeration_size(const CandidateTable& candidates, bool allow_unserved = false);

SelectionResult largest_energy_select(const Scenario& scenario, const ChannelRealization& realization,
                                      const CandidateTable& candidates, bool allow_unserved = false);

SelectionResult random_select(const Scenario& scenario, const CandidateTable& candidates, Rng& rng,
                              bool allow_unserved = false);

// Sum-SINR of an assignment through the metrics module.
double assignment_sum_sinr(const Scenario& scenario, const ChannelRealization& realization,
                           const CandidateTable& candidates, const Assignment& assignment, double noise_power);

} // namespace mimosel

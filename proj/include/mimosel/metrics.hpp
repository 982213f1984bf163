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
#include "mimosel/scenario.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace mimosel {

struct UserMetric {
    std::size_t cluster = 0;
    std::size_t user = 0;
    std::size_t bs = 0;
    double signal = 0.0;
    double interference = 0.0; // gamma: power received from other clusters' precoders
    double sinr = 0.0;
    double rate = 0.0;         // log2(1 + sinr)
};

// Per-user SINR under the precoders of one assignment. Interference sums every
// other cluster's streams through the channel from this user to the BS that
// serves them; links outside a BS sector carry no power unless sectors are
// ignored.
std::vector<UserMetric> compute_sinr(const Scenario& scenario, const ChannelRealization& realization,
                                     const PrecoderSet& precoders, double noise_power);

struct SlnrMetric {
    std::size_t user = 0;
    double signal = 0.0;
    double leakage = 0.0; // zeta: power leaked into every other visible cluster at this BS
    double slnr = 0.0;
};

// SLNR of every user of cluster c if it were served by `precoder.bs`.
std::vector<SlnrMetric> compute_slnr(const Scenario& scenario, const ChannelRealization& realization,
                                     std::size_t c, const ClusterPrecoder& precoder, double noise_power);

double sum_slnr(std::span<const SlnrMetric> metrics);

// Closed-form lower bound on the mean SLNR of cluster c at BS l:
//   (tr(B^H R_c B) - (K_c - 1) lambda_c) / (sum_{c' != c} K_c' tr(B^H R_c' B) + noise / power)
// using the covariance each link's channels are drawn from. Not clamped.
double compute_laslnr(const Scenario& scenario, const ChannelModel& model, std::size_t c, std::size_t l,
                      const Prebeamformer& prebeamformer);

// tr(B^H E Lambda E^H B)
double projected_energy(const EigenBasis& basis, const arma::cx_mat& prebeamformer);

struct SumRate {
    double system = 0.0;      // bits/s/Hz
    double per_cluster = 0.0; // system / C
};

SumRate sum_rate(std::span<const UserMetric> metrics, std::size_t num_clusters);

inline double shannon_rate(double sinr) { return std::log2(1.0 + sinr); }

} // namespace mimosel

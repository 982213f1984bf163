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

#include "mimosel/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace mimosel {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Physical and numerical parameters of one network. Powers are linear,
// lengths in meters.
struct NetworkConfig {
    double cell_radius = 1000.0;
    std::size_t num_bs = 3;
    std::size_t num_clusters = 8;
    std::size_t users_per_cluster = 3;
    std::size_t num_antennas = 64;
    double spacing_ratio = 0.5;           // antenna spacing / wavelength
    double ring_radius = 100.0;           // scattering ring radius
    double noise_power = 1.0;
    double per_user_power = 100.0;        // P_t = ||v||^2
    std::uint64_t rng_seed = 1;

    double rank_epsilon = 1e-3;           // discarded eigenvalue mass fraction
    bool exact_rank = false;              // keep every eigenvalue above 1e-12 instead
    double abd_energy_fraction = 0.95;    // e* of approximate BD
    bool ignore_sectors = false;

    // Throws Error(InvalidConfig) naming the offending field.
    void validate() const;
};

inline constexpr double kSectorHalfWidth = 1.0471975511965976; // 60 degrees

struct OneRingParams {
    double theta = 0.0;     // azimuth relative to boresight, (-pi, pi]
    double spread = 0.0;    // half-width of the angle-spreading range
    double distance = 0.0;
    bool in_sector = false;
};

struct BaseStation {
    Point position;
    double boresight = 0.0; // radians, global frame
};

struct ClusterGeometry {
    Point position;
    std::vector<OneRingParams> per_bs; // indexed by BS
};

struct Scenario {
    NetworkConfig config;
    std::vector<BaseStation> stations;
    std::vector<ClusterGeometry> clusters;

    std::size_t num_bs() const { return stations.size(); }
    std::size_t num_clusters() const { return clusters.size(); }

    // Whether BS l may serve / must protect cluster c. Always true when
    // sectors are ignored.
    bool visible(std::size_t c, std::size_t l) const
    {
        return config.ignore_sectors || clusters[c].per_bs[l].in_sector;
    }
};

// theta of the cluster center relative to the BS boresight, spread
// asin(ring_radius / distance). Throws DegenerateGeometry when the ring
// engulfs the BS.
OneRingParams derive_one_ring_params(const Point& bs_position, double bs_boresight,
                                     const Point& cluster_position, double ring_radius);

// BSs at equally spaced points of the cell boundary, each facing the center.
std::vector<BaseStation> place_stations(const NetworkConfig& config);

// Full drop geometry. Clusters are uniform on the disc, rejected when the
// ring would engulf any BS or when no BS sector covers them.
Scenario place_network(const NetworkConfig& config, Rng& rng);

// Geometry with caller-chosen cluster positions; used by tests and replay.
Scenario make_scenario(const NetworkConfig& config, const std::vector<Point>& cluster_positions);

} // namespace mimosel

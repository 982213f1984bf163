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

#include "mimosel/scenario.hpp"

#include "mimosel/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace mimosel {

namespace {

void require(bool ok, const char* field, const char* reason)
{
    if (!ok)
        throw Error(ErrorKind::InvalidConfig, std::string(field) + ": " + reason);
}

double wrap_angle(double a)
{
    a = std::remainder(a, 2.0 * std::numbers::pi);
    if (a <= -std::numbers::pi)
        a += 2.0 * std::numbers::pi;
    return a;
}

} // namespace

void NetworkConfig::validate() const
{
    require(num_bs >= 1, "num_bs", "must be >= 1");
    require(num_clusters >= 1, "num_clusters", "must be >= 1");
    require(users_per_cluster >= 1, "users_per_cluster", "must be >= 1");
    require(num_antennas >= num_clusters * users_per_cluster, "num_antennas",
            "must be >= num_clusters * users_per_cluster");
    require(cell_radius > 0.0, "cell_radius", "must be > 0");
    require(ring_radius > 0.0, "ring_radius", "must be > 0");
    require(ring_radius < cell_radius, "ring_radius", "must be smaller than cell_radius");
    require(spacing_ratio > 0.0, "spacing_ratio", "must be > 0");
    require(noise_power > 0.0, "noise_power", "must be > 0");
    require(per_user_power > 0.0, "per_user_power", "must be > 0");
    require(rank_epsilon >= 0.0 && rank_epsilon < 1.0, "rank_epsilon", "must be in [0, 1)");
    require(abd_energy_fraction > 0.0 && abd_energy_fraction <= 1.0, "abd_energy_fraction",
            "must be in (0, 1]");
}

OneRingParams derive_one_ring_params(const Point& bs_position, double bs_boresight,
                                     const Point& cluster_position, double ring_radius)
{
    const double dx = cluster_position.x - bs_position.x;
    const double dy = cluster_position.y - bs_position.y;
    const double distance = std::hypot(dx, dy);
    if (!(distance > ring_radius))
        throw Error(ErrorKind::DegenerateGeometry,
                    "cluster at distance " + std::to_string(distance) +
                        " m is inside its scattering ring of radius " + std::to_string(ring_radius) + " m");

    OneRingParams p;
    p.distance = distance;
    p.theta = wrap_angle(std::atan2(dy, dx) - bs_boresight);
    p.spread = std::asin(ring_radius / distance);
    p.in_sector = std::abs(p.theta) <= kSectorHalfWidth + 1e-12;
    return p;
}

std::vector<BaseStation> place_stations(const NetworkConfig& config)
{
    std::vector<BaseStation> out(config.num_bs);
    for (std::size_t l = 0; l < config.num_bs; ++l)
    {
        // Corner l sits at angle pi/2 + 2*pi*l/L; L = 3 gives the usual
        // three-corner layout with one BS at the top.
        const double phi = std::numbers::pi / 2.0 + 2.0 * std::numbers::pi * double(l) / double(config.num_bs);
        out[l].position = {config.cell_radius * std::cos(phi), config.cell_radius * std::sin(phi)};
        out[l].boresight = wrap_angle(phi + std::numbers::pi);
    }
    return out;
}

Scenario make_scenario(const NetworkConfig& config, const std::vector<Point>& cluster_positions)
{
    Scenario s;
    s.config = config;
    s.stations = place_stations(config);
    s.clusters.resize(cluster_positions.size());
    for (std::size_t c = 0; c < cluster_positions.size(); ++c)
    {
        s.clusters[c].position = cluster_positions[c];
        s.clusters[c].per_bs.reserve(s.stations.size());
        for (const auto& bs : s.stations)
            s.clusters[c].per_bs.push_back(
                derive_one_ring_params(bs.position, bs.boresight, cluster_positions[c], config.ring_radius));
    }
    return s;
}

Scenario place_network(const NetworkConfig& config, Rng& rng)
{
    config.validate();
    const auto stations = place_stations(config);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    auto acceptable = [&](const Point& p) {
        bool any_sector = false;
        for (const auto& bs : stations)
        {
            if (std::hypot(p.x - bs.position.x, p.y - bs.position.y) <= config.ring_radius)
                return false;
            any_sector = any_sector ||
                         derive_one_ring_params(bs.position, bs.boresight, p, config.ring_radius).in_sector;
        }
        return any_sector || config.ignore_sectors;
    };

    std::vector<Point> positions;
    positions.reserve(config.num_clusters);
    while (positions.size() < config.num_clusters)
    {
        Point p{config.cell_radius * unit(rng), config.cell_radius * unit(rng)};
        if (p.x * p.x + p.y * p.y > config.cell_radius * config.cell_radius)
            continue;
        if (acceptable(p))
            positions.push_back(p);
    }
    return make_scenario(config, positions);
}

} // namespace mimosel

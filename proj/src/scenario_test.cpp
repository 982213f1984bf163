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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace mimosel {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

ErrorKind kind_of(auto&& fn)
{
    try
    {
        fn();
    }
    catch (const Error& e)
    {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::NumericalFailure;
}

TEST(Scenario, BoresightCluster)
{
    const auto p = derive_one_ring_params({0, 0}, 0.0, {500, 0}, 100.0);
    EXPECT_DOUBLE_EQ(p.theta, 0.0);
    EXPECT_DOUBLE_EQ(p.spread, std::asin(0.2));
    EXPECT_DOUBLE_EQ(p.distance, 500.0);
    EXPECT_TRUE(p.in_sector);
}

TEST(Scenario, DiagonalClusterMatchesTrigonometry)
{
    const auto p = derive_one_ring_params({0, 0}, 0.0, {100, 100}, 50.0);
    EXPECT_NEAR(p.theta, 45.0 * kDeg, 1e-14);
    EXPECT_NEAR(p.spread, 20.7048 * kDeg, 1e-5);
    // Tangent-line oracle: the half-angle whose tangent ray just touches the ring.
    const double d = std::sqrt(2.0) * 100.0;
    EXPECT_NEAR(std::tan(p.spread), 50.0 / std::sqrt(d * d - 50.0 * 50.0), 1e-14);
}

TEST(Scenario, PointSourceLimit)
{
    for (double r : {1.0, 1e-3, 1e-6, 1e-9})
        EXPECT_LE(derive_one_ring_params({0, 0}, 0.0, {300, 40}, r).spread, r / 300.0 * 1.0001);
}

TEST(Scenario, RingEngulfingBsIsDegenerate)
{
    EXPECT_EQ(kind_of([] { derive_one_ring_params({0, 0}, 0.0, {50, 0}, 100.0); }), ErrorKind::DegenerateGeometry);
    EXPECT_EQ(kind_of([] { derive_one_ring_params({0, 0}, 0.0, {100, 0}, 100.0); }), ErrorKind::DegenerateGeometry);
}

TEST(Scenario, SectorEdges)
{
    EXPECT_TRUE(derive_one_ring_params({0, 0}, 0.0, {std::cos(60 * kDeg) * 500, std::sin(60 * kDeg) * 500}, 10).in_sector);
    EXPECT_FALSE(derive_one_ring_params({0, 0}, 0.0, {std::cos(61 * kDeg) * 500, std::sin(61 * kDeg) * 500}, 10).in_sector);
    EXPECT_FALSE(derive_one_ring_params({0, 0}, 0.0, {-500, 1}, 10).in_sector);
}

TEST(Scenario, ThreeCornerStations)
{
    NetworkConfig cfg;
    const auto bs = place_stations(cfg);
    ASSERT_EQ(bs.size(), 3u);
    for (std::size_t l = 0; l < 3; ++l)
    {
        EXPECT_NEAR(std::hypot(bs[l].position.x, bs[l].position.y), 1000.0, 1e-9);
        // Boresight points at the center.
        const double to_center = std::atan2(-bs[l].position.y, -bs[l].position.x);
        EXPECT_NEAR(std::remainder(bs[l].boresight - to_center, 2 * std::numbers::pi), 0.0, 1e-12);
        const auto& next = bs[(l + 1) % 3];
        const double angle = std::acos((bs[l].position.x * next.position.x + bs[l].position.y * next.position.y) / 1e6);
        EXPECT_NEAR(angle, 120.0 * kDeg, 1e-12);
    }
}

TEST(Scenario, SameSeedSamePositions)
{
    NetworkConfig cfg;
    Rng a(5), b(5);
    const auto s1 = place_network(cfg, a);
    const auto s2 = place_network(cfg, b);
    ASSERT_EQ(s1.num_clusters(), cfg.num_clusters);
    for (std::size_t c = 0; c < cfg.num_clusters; ++c)
    {
        EXPECT_EQ(s1.clusters[c].position.x, s2.clusters[c].position.x);
        EXPECT_EQ(s1.clusters[c].position.y, s2.clusters[c].position.y);
    }
}

TEST(Scenario, PlacedClustersRespectConstraints)
{
    NetworkConfig cfg;
    cfg.num_clusters = 16;
    Rng rng(9);
    for (int drop = 0; drop < 200; ++drop)
    {
        const auto s = place_network(cfg, rng);
        for (std::size_t c = 0; c < s.num_clusters(); ++c)
        {
            const auto& g = s.clusters[c];
            EXPECT_LE(std::hypot(g.position.x, g.position.y), cfg.cell_radius);
            bool any = false;
            for (std::size_t l = 0; l < s.num_bs(); ++l)
            {
                EXPECT_GT(g.per_bs[l].distance, cfg.ring_radius);
                EXPECT_GT(g.per_bs[l].spread, 0.0);
                EXPECT_LT(g.per_bs[l].spread, std::numbers::pi / 2);
                any = any || s.visible(c, l);
            }
            EXPECT_TRUE(any);
        }
    }
}

TEST(Scenario, SpreadDecreasesWithDistance)
{
    Rng rng(3);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::uniform_real_distribution<double> dist(101.0, 2000.0);
    for (int i = 0; i < 1000; ++i)
    {
        const double a = angle(rng), d1 = dist(rng), d2 = dist(rng);
        const double near = std::min(d1, d2), far = std::max(d1, d2);
        if (far - near < 1e-6)
            continue;
        const auto p1 = derive_one_ring_params({0, 0}, 0.3, {near * std::cos(a), near * std::sin(a)}, 100.0);
        const auto p2 = derive_one_ring_params({0, 0}, 0.3, {far * std::cos(a), far * std::sin(a)}, 100.0);
        EXPECT_GT(p1.spread, p2.spread);
    }
}

TEST(Scenario, RotationInvariance)
{
    Rng rng(4);
    std::uniform_real_distribution<double> coord(-1000.0, 1000.0), rot(-std::numbers::pi, std::numbers::pi);
    for (int i = 0; i < 500; ++i)
    {
        const Point bs{coord(rng), coord(rng)}, cl{coord(rng), coord(rng)};
        if (std::hypot(bs.x - cl.x, bs.y - cl.y) <= 60.0)
            continue;
        const double boresight = rot(rng), phi = rot(rng);
        auto turn = [&](Point p) {
            return Point{p.x * std::cos(phi) - p.y * std::sin(phi), p.x * std::sin(phi) + p.y * std::cos(phi)};
        };
        const auto a = derive_one_ring_params(bs, boresight, cl, 50.0);
        const auto b = derive_one_ring_params(turn(bs), boresight + phi, turn(cl), 50.0);
        EXPECT_NEAR(std::remainder(a.theta - b.theta, 2 * std::numbers::pi), 0.0, 1e-9);
        EXPECT_NEAR(a.spread, b.spread, 1e-12);
        EXPECT_NEAR(a.distance, b.distance, 1e-9);
    }
}

TEST(Scenario, UniformOnDisc)
{
    NetworkConfig cfg;
    cfg.num_clusters = 1;
    cfg.ignore_sectors = true;
    Rng rng(12);
    double sum = 0.0;
    const int drops = 100000;
    for (int i = 0; i < drops; ++i)
    {
        const auto s = place_network(cfg, rng);
        const auto& p = s.clusters[0].position;
        sum += p.x * p.x + p.y * p.y;
    }
    const double expected = cfg.cell_radius * cfg.cell_radius / 2.0;
    EXPECT_NEAR(sum / drops / expected, 1.0, 0.02);
}

TEST(Scenario, ValidationNamesTheField)
{
    auto message = [](NetworkConfig cfg) -> std::string {
        try
        {
            cfg.validate();
        }
        catch (const Error& e)
        {
            EXPECT_EQ(e.kind(), ErrorKind::InvalidConfig);
            return e.what();
        }
        return {};
    };
    NetworkConfig cfg;
    EXPECT_EQ(message(cfg), "");
    cfg.num_antennas = 20; // 8 clusters * 3 users
    EXPECT_NE(message(cfg).find("num_antennas"), std::string::npos);
    cfg = {};
    cfg.ring_radius = -1.0;
    EXPECT_NE(message(cfg).find("ring_radius"), std::string::npos);
    cfg = {};
    cfg.noise_power = 0.0;
    EXPECT_NE(message(cfg).find("noise_power"), std::string::npos);
    cfg = {};
    cfg.num_bs = 0;
    EXPECT_NE(message(cfg).find("num_bs"), std::string::npos);
}

TEST(Scenario, SingleStationSeesEverything)
{
    NetworkConfig cfg;
    cfg.num_bs = 1;
    Rng rng(1);
    const auto s = place_network(cfg, rng);
    for (std::size_t c = 0; c < s.num_clusters(); ++c)
        EXPECT_TRUE(s.visible(c, 0));
}

} // namespace
} // namespace mimosel

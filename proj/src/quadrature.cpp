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

#include "mimosel/quadrature.hpp"

#include "mimosel/errors.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace mimosel {

namespace {

GaussLegendreRule compute_rule(std::size_t n)
{
    if (n == 0)
        throw Error(ErrorKind::NumericalFailure, "Gauss-Legendre rule needs at least one node");

    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const std::size_t m = (n + 1) / 2;
    const double nn = static_cast<double>(n);

    for (std::size_t i = 0; i < m; ++i)
    {
        // Newton iteration on P_n from the Tricomi initial guess.
        double z = std::cos(std::numbers::pi * (double(i) + 0.75) / (nn + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter)
        {
            double p1 = 1.0, p2 = 0.0;
            for (std::size_t j = 1; j <= n; ++j)
            {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * double(j) - 1.0) * z * p2 - (double(j) - 1.0) * p3) / double(j);
            }
            pp = nn * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15)
                break;
        }
        // Weight from the derivative at the converged root.
        double p1 = 1.0, p2 = 0.0;
        for (std::size_t j = 1; j <= n; ++j)
        {
            const double p3 = p2;
            p2 = p1;
            p1 = ((2.0 * double(j) - 1.0) * z * p2 - (double(j) - 1.0) * p3) / double(j);
        }
        pp = nn * (z * p1 - p2) / (z * z - 1.0);
        const double w = 2.0 / ((1.0 - z * z) * pp * pp);

        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1)
        rule.nodes[n / 2] = 0.0;
    return rule;
}

} // namespace

const GaussLegendreRule& gauss_legendre(std::size_t n)
{
    static std::mutex mutex;
    static std::map<std::size_t, std::unique_ptr<GaussLegendreRule>> cache;

    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot)
        slot = std::make_unique<GaussLegendreRule>(compute_rule(n));
    return *slot;
}

} // namespace mimosel

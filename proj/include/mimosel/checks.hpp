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

#include <iosfwd>
#include <string>
#include <vector>

namespace mimosel {

// Self-contained invariant suites with fixed seeds. Each prints one line per
// assertion and returns true iff every assertion passed.
const std::vector<std::string>& check_suites();

// Throws Error(UnknownSuite) for names outside check_suites().
bool run_check(const std::string& suite, std::ostream& out);

} // namespace mimosel

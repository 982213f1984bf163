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

#include <stdexcept>
#include <string>
#include <string_view>

namespace mimosel {

enum class ErrorKind {
    InvalidConfig,
    DegenerateGeometry,
    InvalidSpread,
    NumericalFailure,
    InfeasibleNullSpace,
    RankDeficient,
    NoFeasibleBS,
    EnumerationTooLarge,
    EmptyInput,
    UnknownSuite,
    UnknownDrop,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so the harness can log
// it per drop and the CLI can map it to an exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace mimosel

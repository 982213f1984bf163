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

#include "mimosel/errors.hpp"

namespace mimosel {

std::string_view to_string(ErrorKind kind)
{
    switch (kind)
    {
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorKind::InvalidSpread: return "InvalidSpread";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::InfeasibleNullSpace: return "InfeasibleNullSpace";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::NoFeasibleBS: return "NoFeasibleBS";
    case ErrorKind::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::UnknownSuite: return "UnknownSuite";
    case ErrorKind::UnknownDrop: return "UnknownDrop";
    }
    return "Unknown";
}

} // namespace mimosel

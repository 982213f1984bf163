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

#include <armadillo>

namespace mimosel {

// Rotates every column so that its first entry of non-negligible magnitude
// is real and positive. Makes eigen/singular vectors reproducible.
void normalize_column_phases(arma::cx_mat& columns);

// Orthonormal basis of span(columns): left singular vectors whose singular
// value exceeds `tolerance` (absolute).
arma::cx_mat orthonormal_basis(const arma::cx_mat& columns, double tolerance);

// Spectral norm of the difference of the orthogonal projectors onto the two
// column spaces; 0 iff the spans coincide.
double subspace_distance(const arma::cx_mat& a, const arma::cx_mat& b);

// max |I - A^H A|
double orthonormality_error(const arma::cx_mat& a);

} // namespace mimosel

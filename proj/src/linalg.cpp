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

#include "mimosel/linalg.hpp"

#include "mimosel/errors.hpp"

#include <cmath>

namespace mimosel {

void normalize_column_phases(arma::cx_mat& columns)
{
    for (arma::uword j = 0; j < columns.n_cols; ++j)
    {
        auto col = columns.col(j);
        const double peak = arma::max(arma::abs(col));
        if (peak == 0.0)
            continue;
        for (arma::uword i = 0; i < col.n_elem; ++i)
        {
            const double mag = std::abs(col(i));
            if (mag > 1e-8 * peak)
            {
                col *= std::conj(col(i)) / mag;
                col(i) = {mag, 0.0};
                break;
            }
        }
    }
}

arma::cx_mat orthonormal_basis(const arma::cx_mat& columns, double tolerance)
{
    if (columns.n_cols == 0)
        return arma::cx_mat(columns.n_rows, 0);

    arma::cx_mat u, v;
    arma::vec s;
    if (!arma::svd_econ(u, s, v, columns, "left", "std"))
        throw Error(ErrorKind::NumericalFailure, "SVD did not converge");

    arma::uword rank = 0;
    while (rank < s.n_elem && s(rank) > tolerance)
        ++rank;
    arma::cx_mat basis = u.head_cols(rank);
    normalize_column_phases(basis);
    return basis;
}

double subspace_distance(const arma::cx_mat& a, const arma::cx_mat& b)
{
    const arma::cx_mat qa = orthonormal_basis(a, 1e-10);
    const arma::cx_mat qb = orthonormal_basis(b, 1e-10);
    const arma::cx_mat diff = qa * qa.t() - qb * qb.t();
    return arma::norm(diff, 2);
}

double orthonormality_error(const arma::cx_mat& a)
{
    if (a.n_cols == 0)
        return 0.0;
    const arma::cx_mat gram = a.t() * a;
    return arma::abs(gram - arma::eye<arma::cx_mat>(a.n_cols, a.n_cols)).max();
}

} // namespace mimosel

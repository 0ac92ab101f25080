// Copyright 2026 The glt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef GLT_ROTATION_HPP
#define GLT_ROTATION_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "glt/error.hpp"
#include "glt/linalg.hpp"
#include "glt/matrix.hpp"
#include "glt/structure.hpp"

namespace glt {

struct GltRotationResult {
    Matrix glt;      ///< ordered GLT representation, glt = input * rotation
    Matrix rotation; ///< k x k orthogonal
    PivotSet pivots;
};

/// Rotation into GLT. The pivot rows are the pivot columns of rref(beta^T);
/// with beta_1 the k x k block of those rows, the rotation is Q from
/// beta_1^T = Q R, so that beta_1 Q = R^T is lower triangular.
inline GltRotationResult rotate_to_glt(const Matrix& beta, double tol = default_tol)
{
    detail::require_positive_tol(tol);
    const std::size_t k = beta.cols();
    const RrefResult echelon = rref(beta.transpose(), tol);
    if (echelon.rank < k)
        throw Error(ErrorKind::RankDeficient, "rotate_to_glt: rank " + std::to_string(echelon.rank) +
                                                  " below column count " + std::to_string(k));

    const Matrix block = beta.select_rows(echelon.pivot_cols);
    QrResult qr = qr_decompose(block.transpose(), tol);
    Matrix g = std::move(qr.q);
    Matrix glt = beta * g;

    // The nonnegative-R convention already makes leaders positive; this pass
    // covers leaders that roundoff pushed across zero.
    const std::vector<std::size_t>& piv = echelon.pivot_cols;
    for (std::size_t j = 0; j < k; ++j) {
        if (glt(piv[j], j) < 0.0) {
            for (std::size_t i = 0; i < glt.rows(); ++i)
                glt(i, j) = -glt(i, j);
            for (std::size_t i = 0; i < k; ++i)
                g(i, j) = -g(i, j);
        }
    }

    // Structural zeros above each pivot.
    const double thr = tol * glt.max_abs();
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < piv[j]; ++i)
            if (std::abs(glt(i, j)) <= thr)
                glt(i, j) = 0.0;

    return {std::move(glt), std::move(g), PivotSet(piv)};
}

/// Max absolute entrywise difference.
inline double glt_distance(const Matrix& a, const Matrix& b)
{
    return max_abs_diff(a, b);
}

} // namespace glt

#endif // GLT_ROTATION_HPP

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


#ifndef GLT_OVERFIT_HPP
#define GLT_OVERFIT_HPP

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "glt/error.hpp"
#include "glt/identification.hpp"
#include "glt/linalg.hpp"
#include "glt/matrix.hpp"
#include "glt/structure.hpp"

namespace glt {

/// m x s block of spurious columns, sorted by pivot row, leaders positive.
struct SpuriousBlock {
    Matrix columns;
    std::vector<std::size_t> pivot_rows; ///< 0-based, ascending
    std::vector<double> values;

    std::size_t size() const noexcept { return pivot_rows.size(); }
};

struct RecoveredTruth {
    Matrix loading; ///< active columns as an ordered GLT matrix
    std::vector<double> idio;
    SpuriousBlock spurious;
    /// Carries the draw's columns to (loading | spurious | inactive).
    SignedPermutation signed_perm;
    std::size_t r = 0;

    VarianceDecomposition decomposition() const { return {loading, idio}; }
};

struct ColumnSplit {
    std::vector<std::size_t> active;   ///< >= 2 nonzeros
    std::vector<std::size_t> spurious; ///< exactly one nonzero
    std::vector<std::size_t> inactive; ///< all zero
};

inline ColumnSplit split_columns(const Matrix& loading, double tol = default_tol)
{
    const SparsityPattern pattern = sparsity_of(loading, tol);
    ColumnSplit out;
    for (std::size_t j = 0; j < pattern.cols(); ++j) {
        const std::size_t n = pattern.col_count(j);
        (n >= 2 ? out.active : n == 1 ? out.spurious : out.inactive).push_back(j);
    }
    return out;
}

/// Appends a spurious column with a single loading `value` in `row` and moves
/// value^2 out of that row's idiosyncratic variance; Omega is unchanged.
inline VarianceDecomposition inject_spurious(const VarianceDecomposition& decomp, std::size_t row, double value,
                                             double tol = default_tol)
{
    const Matrix& lam = decomp.loading();
    if (row >= lam.rows())
        throw Error(ErrorKind::InvalidArgument, "inject_spurious: row out of range");
    const double sq = value * value;
    if (!(sq > 0.0))
        throw Error(ErrorKind::VarianceUnderflow, "inject_spurious: spurious loading must be nonzero");
    if (!(sq < decomp.idio()[row]))
        throw Error(ErrorKind::VarianceUnderflow,
                    "inject_spurious: value^2 must stay below sigma^2 of row " + std::to_string(row + 1));

    const SparsityPattern pattern = sparsity_of(lam, tol);
    for (std::size_t j = 0; j < pattern.cols(); ++j) {
        std::size_t i = 0;
        while (i < pattern.rows() && !pattern(i, j))
            ++i;
        if (i == row)
            throw Error(ErrorKind::PivotCollision,
                        "inject_spurious: row " + std::to_string(row + 1) + " is already a pivot row");
    }

    Matrix out(lam.rows(), lam.cols() + 1);
    for (std::size_t i = 0; i < lam.rows(); ++i)
        std::copy(lam.row(i).begin(), lam.row(i).end(), out.row(i).begin());
    out(row, lam.cols()) = value;
    std::vector<double> idio(decomp.idio().begin(), decomp.idio().end());
    idio[row] -= sq;
    return {std::move(out), std::move(idio)};
}

/// Separates a draw of an overfitting unordered GLT model into the ordered
/// GLT truth and its spurious block. Inactive columns are ignored. Throws
/// NotGlt if the non-inactive columns do not have distinct pivots,
/// NotIdentified if the active pattern fails CR(r, 1) and RankDeficient if the
/// active block has dependent columns.
inline RecoveredTruth recover_truth(const Matrix& draw_loading, std::span<const double> draw_idio,
                                    double tol = default_tol, std::size_t budget = default_budget)
{
    if (draw_idio.size() != draw_loading.rows())
        throw Error(ErrorKind::DimensionMismatch, "recover_truth: idio length differs from loading rows");
    const ColumnSplit split = split_columns(draw_loading, tol);
    const SparsityPattern pattern = sparsity_of(draw_loading, tol);

    std::vector<std::size_t> used = split.active;
    used.insert(used.end(), split.spurious.begin(), split.spurious.end());
    std::sort(used.begin(), used.end());
    if (!pivot_rows(pattern.select_cols(used)).distinct())
        throw Error(ErrorKind::NotGlt, "recover_truth: pivot rows of the draw collide");

    const CountingVerdict cr = counting_rule(pattern.select_cols(split.active), 1, budget);
    if (!cr.satisfied)
        throw Error(ErrorKind::NotIdentified, "recover_truth: active columns violate CR(r, 1)");

    const Matrix active = draw_loading.select_cols(split.active);
    if (matrix_rank(active, tol) < active.cols())
        throw Error(ErrorKind::RankDeficient, "recover_truth: active columns are linearly dependent");

    RecoveredTruth out;
    out.r = split.active.size();
    auto [ordered, active_sp] = normalize_to_ordered(active, tol);
    out.loading = std::move(ordered);

    // Spurious columns sorted by their single row, leader made positive.
    std::vector<std::pair<std::size_t, std::size_t>> spur; // (row, draw column)
    for (std::size_t c : split.spurious) {
        std::size_t i = 0;
        while (!pattern(i, c))
            ++i;
        spur.emplace_back(i, c);
    }
    std::sort(spur.begin(), spur.end());

    const std::size_t m = draw_loading.rows();
    out.idio.assign(draw_idio.begin(), draw_idio.end());
    out.spurious.columns = Matrix(m, spur.size());
    for (std::size_t t = 0; t < spur.size(); ++t) {
        const auto [row, c] = spur[t];
        const double v = draw_loading(row, c);
        out.spurious.pivot_rows.push_back(row);
        out.spurious.values.push_back(std::abs(v));
        out.spurious.columns(row, t) = std::abs(v);
        out.idio[row] += v * v;
    }

    const std::size_t k = draw_loading.cols();
    out.signed_perm = SignedPermutation{std::vector<std::size_t>(k), std::vector<int>(k, 1)};
    for (std::size_t t = 0; t < split.active.size(); ++t) {
        out.signed_perm.perm[split.active[t]] = active_sp.perm[t];
        out.signed_perm.signs[split.active[t]] = active_sp.signs[t];
    }
    for (std::size_t t = 0; t < spur.size(); ++t) {
        const auto [row, c] = spur[t];
        out.signed_perm.perm[c] = out.r + t;
        out.signed_perm.signs[c] = draw_loading(row, c) < 0.0 ? -1 : 1;
    }
    for (std::size_t t = 0; t < split.inactive.size(); ++t)
        out.signed_perm.perm[split.inactive[t]] = out.r + spur.size() + t;
    return out;
}

} // namespace glt

#endif // GLT_OVERFIT_HPP

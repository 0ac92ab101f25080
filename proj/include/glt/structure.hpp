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


#ifndef GLT_STRUCTURE_HPP
#define GLT_STRUCTURE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "glt/error.hpp"
#include "glt/linalg.hpp"
#include "glt/matrix.hpp"

namespace glt {

/// Binary m x k indicator of nonzero loadings.
class SparsityPattern {
public:
    SparsityPattern() = default;
    SparsityPattern(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), bits_(rows * cols, 0) {}

    SparsityPattern(std::initializer_list<std::initializer_list<int>> rows)
        : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0)
    {
        bits_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_)
                throw Error(ErrorKind::DimensionMismatch, "ragged pattern initializer");
            for (int b : row) {
                if (b != 0 && b != 1)
                    throw Error(ErrorKind::InvalidArgument, "pattern entries must be 0 or 1");
                bits_.push_back(static_cast<std::uint8_t>(b));
            }
        }
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    bool operator()(std::size_t i, std::size_t j) const noexcept { return bits_[i * cols_ + j] != 0; }
    void set(std::size_t i, std::size_t j, bool on) noexcept { bits_[i * cols_ + j] = on ? 1 : 0; }

    std::size_t col_count(std::size_t j) const noexcept
    {
        std::size_t n = 0;
        for (std::size_t i = 0; i < rows_; ++i)
            n += (*this)(i, j);
        return n;
    }

    std::size_t nonzeros() const noexcept { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1)); }

    SparsityPattern select_cols(std::span<const std::size_t> idx) const
    {
        SparsityPattern out(rows_, idx.size());
        for (std::size_t c = 0; c < idx.size(); ++c)
            for (std::size_t i = 0; i < rows_; ++i)
                out.set(i, c, (*this)(i, idx[c]));
        return out;
    }

    SparsityPattern select_rows(std::span<const std::size_t> idx) const
    {
        SparsityPattern out(idx.size(), cols_);
        for (std::size_t r = 0; r < idx.size(); ++r)
            for (std::size_t j = 0; j < cols_; ++j)
                out.set(r, j, (*this)(idx[r], j));
        return out;
    }

    friend bool operator==(const SparsityPattern&, const SparsityPattern&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint8_t> bits_;
};

/// Per-column pivot rows (0-based) with their rank among the sorted pivots.
class PivotSet {
public:
    PivotSet() = default;
    explicit PivotSet(std::vector<std::size_t> pivots) : pivots_(std::move(pivots))
    {
        std::vector<std::size_t> order(pivots_.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return pivots_[a] < pivots_[b]; });
        ranks_.resize(pivots_.size());
        for (std::size_t z = 0; z < order.size(); ++z)
            ranks_[order[z]] = z;
    }

    std::span<const std::size_t> pivots() const noexcept { return pivots_; }
    /// 0-based rank z_j - 1 of pivot j in ascending order.
    std::span<const std::size_t> ranks() const noexcept { return ranks_; }
    std::size_t size() const noexcept { return pivots_.size(); }
    std::size_t operator[](std::size_t j) const noexcept { return pivots_[j]; }

    bool distinct() const
    {
        std::vector<std::size_t> s = pivots_;
        std::sort(s.begin(), s.end());
        return std::adjacent_find(s.begin(), s.end()) == s.end();
    }

    bool ordered() const noexcept
    {
        for (std::size_t j = 1; j < pivots_.size(); ++j)
            if (!(pivots_[j - 1] < pivots_[j]))
                return false;
        return true;
    }

    friend bool operator==(const PivotSet& a, const PivotSet& b) { return a.pivots_ == b.pivots_; }

private:
    std::vector<std::size_t> pivots_;
    std::vector<std::size_t> ranks_;
};

/// Column permutation with sign switches, acting as Lambda * P_pm * P_rho:
/// input column c is multiplied by signs[c] and moved to column perm[c].
struct SignedPermutation {
    std::vector<std::size_t> perm;
    std::vector<int> signs;

    static SignedPermutation identity(std::size_t k)
    {
        SignedPermutation sp{std::vector<std::size_t>(k), std::vector<int>(k, 1)};
        std::iota(sp.perm.begin(), sp.perm.end(), std::size_t{0});
        return sp;
    }

    std::size_t size() const noexcept { return perm.size(); }

    void validate() const
    {
        if (signs.size() != perm.size())
            throw Error(ErrorKind::DimensionMismatch, "signed permutation: perm and signs differ in length");
        std::vector<bool> seen(perm.size(), false);
        for (std::size_t c = 0; c < perm.size(); ++c) {
            if (perm[c] >= perm.size() || seen[perm[c]])
                throw Error(ErrorKind::InvalidArgument, "signed permutation: perm is not a bijection");
            seen[perm[c]] = true;
            if (signs[c] != 1 && signs[c] != -1)
                throw Error(ErrorKind::InvalidArgument, "signed permutation: signs must be +1 or -1");
        }
    }

    /// The signed permutation undoing this one.
    SignedPermutation inverse() const
    {
        validate();
        SignedPermutation inv{std::vector<std::size_t>(perm.size()), std::vector<int>(perm.size())};
        for (std::size_t c = 0; c < perm.size(); ++c) {
            inv.perm[perm[c]] = c;
            inv.signs[perm[c]] = signs[c];
        }
        return inv;
    }

    /// Explicit k x k matrix P_pm * P_rho.
    Matrix to_matrix() const
    {
        validate();
        Matrix m(perm.size(), perm.size());
        for (std::size_t c = 0; c < perm.size(); ++c)
            m(c, perm[c]) = signs[c];
        return m;
    }

    bool is_identity() const noexcept
    {
        for (std::size_t c = 0; c < perm.size(); ++c)
            if (perm[c] != c || signs[c] != 1)
                return false;
        return true;
    }

    friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;
};

/// Loading matrix plus strictly positive idiosyncratic variances.
class VarianceDecomposition {
public:
    VarianceDecomposition() = default;
    VarianceDecomposition(Matrix loading, std::vector<double> idio)
        : loading_(std::move(loading)), idio_(std::move(idio))
    {
        if (idio_.size() != loading_.rows())
            throw Error(ErrorKind::DimensionMismatch, "idiosyncratic variances must match loading rows");
        for (double s : idio_)
            if (!(s > 0.0) || !std::isfinite(s))
                throw Error(ErrorKind::InvalidArgument, "idiosyncratic variances must be positive and finite");
    }

    const Matrix& loading() const noexcept { return loading_; }
    std::span<const double> idio() const noexcept { return idio_; }
    std::size_t rows() const noexcept { return loading_.rows(); }
    std::size_t factors() const noexcept { return loading_.cols(); }

private:
    Matrix loading_;
    std::vector<double> idio_;
};

inline SparsityPattern sparsity_of(const Matrix& loading, double tol = default_tol)
{
    detail::require_positive_tol(tol);
    const double thr = tol * loading.max_abs();
    SparsityPattern out(loading.rows(), loading.cols());
    for (std::size_t i = 0; i < loading.rows(); ++i)
        for (std::size_t j = 0; j < loading.cols(); ++j)
            out.set(i, j, std::abs(loading(i, j)) > thr);
    return out;
}

/// First nonzero row of every column. Throws ZeroColumn for an empty column.
inline PivotSet pivot_rows(const SparsityPattern& pattern)
{
    std::vector<std::size_t> piv(pattern.cols());
    for (std::size_t j = 0; j < pattern.cols(); ++j) {
        std::size_t i = 0;
        while (i < pattern.rows() && !pattern(i, j))
            ++i;
        if (i == pattern.rows())
            throw Error(ErrorKind::ZeroColumn, "column " + std::to_string(j + 1) + " has no nonzero entry");
        piv[j] = i;
    }
    return PivotSet(std::move(piv));
}

inline bool is_unordered_glt(const SparsityPattern& pattern)
{
    for (std::size_t j = 0; j < pattern.cols(); ++j)
        if (pattern.col_count(j) == 0)
            return false;
    return pivot_rows(pattern).distinct();
}

/// Ordered GLT: strictly increasing pivots, positive leading loadings and
/// full column rank.
inline bool is_ordered_glt(const Matrix& loading, double tol = default_tol)
{
    const SparsityPattern pattern = sparsity_of(loading, tol);
    if (!is_unordered_glt(pattern))
        return false;
    const PivotSet piv = pivot_rows(pattern);
    if (!piv.ordered())
        return false;
    for (std::size_t j = 0; j < loading.cols(); ++j)
        if (!(loading(piv[j], j) > 0.0))
            return false;
    return matrix_rank(loading, tol) == loading.cols();
}

inline bool is_ordered_glt(const VarianceDecomposition& decomp, double tol = default_tol)
{
    return is_ordered_glt(decomp.loading(), tol);
}

inline Matrix apply_signed_permutation(const Matrix& loading, const SignedPermutation& sp)
{
    if (sp.size() != loading.cols())
        throw Error(ErrorKind::DimensionMismatch, "signed permutation size differs from column count");
    sp.validate();
    Matrix out(loading.rows(), loading.cols());
    for (std::size_t c = 0; c < loading.cols(); ++c)
        for (std::size_t i = 0; i < loading.rows(); ++i)
            out(i, sp.perm[c]) = sp.signs[c] * loading(i, c);
    return out;
}

/// Sorts columns by pivot row and makes every leading loading positive.
/// Returns the ordered matrix and the signed permutation carrying the input to
/// it.
inline std::pair<Matrix, SignedPermutation> normalize_to_ordered(const Matrix& loading, double tol = default_tol)
{
    const SparsityPattern pattern = sparsity_of(loading, tol);
    for (std::size_t j = 0; j < pattern.cols(); ++j)
        if (pattern.col_count(j) == 0)
            throw Error(ErrorKind::NotGlt, "column " + std::to_string(j + 1) + " is zero");
    const PivotSet piv = pivot_rows(pattern);
    if (!piv.distinct())
        throw Error(ErrorKind::NotGlt, "pivot rows collide");

    SignedPermutation sp{std::vector<std::size_t>(piv.size()), std::vector<int>(piv.size())};
    for (std::size_t c = 0; c < piv.size(); ++c) {
        sp.perm[c] = piv.ranks()[c];
        sp.signs[c] = loading(piv[c], c) < 0.0 ? -1 : 1;
    }
    return {apply_signed_permutation(loading, sp), std::move(sp)};
}

/// Omega = Lambda Lambda^T + diag(idio).
inline Matrix implied_covariance(const VarianceDecomposition& decomp)
{
    Matrix omega = multiply_transposed(decomp.loading(), decomp.loading());
    for (std::size_t i = 0; i < omega.rows(); ++i)
        omega(i, i) += decomp.idio()[i];
    return omega;
}

} // namespace glt

#endif // GLT_STRUCTURE_HPP

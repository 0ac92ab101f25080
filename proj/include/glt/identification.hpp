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


#ifndef GLT_IDENTIFICATION_HPP
#define GLT_IDENTIFICATION_HPP

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "glt/error.hpp"
#include "glt/linalg.hpp"
#include "glt/matrix.hpp"
#include "glt/structure.hpp"

namespace glt {

inline constexpr std::size_t default_budget = 2'000'000;

/// First violated column subset: `nonzero_rows` < 2q + s.
struct CountingWitness {
    std::size_t q = 0;
    std::vector<std::size_t> columns; ///< 0-based, ascending
    std::size_t nonzero_rows = 0;

    friend bool operator==(const CountingWitness&, const CountingWitness&) = default;
};

struct CountingVerdict {
    bool satisfied = true;
    std::optional<CountingWitness> witness;
    std::size_t checked_subsets = 0;
};

enum class Verdict { Identified, NotIdentified, Inconclusive };

constexpr std::string_view to_string(Verdict v) noexcept
{
    switch (v) {
    case Verdict::Identified: return "Identified";
    case Verdict::NotIdentified: return "NotIdentified";
    case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Unknown";
}

struct IdentificationReport {
    std::size_t s = 1;
    bool is_unordered_glt = false;
    bool glt_ar_ok = false;
    /// Absent when the exhaustive enumeration ran out of budget.
    std::optional<CountingVerdict> counting;
    bool exhaustive = false; ///< counting came from the full enumeration
    std::optional<bool> rd_oracle;
    Verdict verdict = Verdict::Inconclusive;
};

namespace detail {

/// Columns of a pattern as row bitsets, for fast unions.
class ColumnBits {
public:
    explicit ColumnBits(const SparsityPattern& p) : words_((p.rows() + 63) / 64), bits_(p.cols() * words_, 0)
    {
        for (std::size_t j = 0; j < p.cols(); ++j)
            for (std::size_t i = 0; i < p.rows(); ++i)
                if (p(i, j))
                    bits_[j * words_ + i / 64] |= std::uint64_t{1} << (i % 64);
    }

    std::size_t union_count(std::span<const std::size_t> cols, std::vector<std::uint64_t>& scratch) const
    {
        scratch.assign(words_, 0);
        for (std::size_t c : cols)
            for (std::size_t w = 0; w < words_; ++w)
                scratch[w] |= bits_[c * words_ + w];
        std::size_t n = 0;
        for (std::uint64_t w : scratch)
            n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

private:
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

// Advance `idx` to the next q-combination of {0..n-1} in lexicographic order.
inline bool next_combination(std::vector<std::size_t>& idx, std::size_t n)
{
    const std::size_t q = idx.size();
    for (std::size_t pos = q; pos-- > 0;) {
        if (idx[pos] < n - q + pos) {
            ++idx[pos];
            for (std::size_t t = pos + 1; t < q; ++t)
                idx[t] = idx[t - 1] + 1;
            return true;
        }
    }
    return false;
}

// Saturating binomial coefficient.
inline double binomial(std::size_t n, std::size_t k)
{
    if (k > n)
        return 0.0;
    k = std::min(k, n - k);
    double out = 1.0;
    for (std::size_t t = 1; t <= k; ++t)
        out = out * static_cast<double>(n - k + t) / static_cast<double>(t);
    return std::round(out);
}

/// Orthonormal basis grown one row at a time; a row is accepted when its
/// residual after projection exceeds an absolute threshold.
class SpanTracker {
public:
    SpanTracker(std::size_t dim, double threshold) : dim_(dim), threshold_(threshold) {}

    bool push(std::span<const double> v)
    {
        std::vector<double> w(v.begin(), v.end());
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis_) {
                const double d = std::inner_product(w.begin(), w.end(), b.begin(), 0.0);
                for (std::size_t t = 0; t < dim_; ++t)
                    w[t] -= d * b[t];
            }
        const double norm = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
        if (!(norm > threshold_))
            return false;
        for (double& x : w)
            x /= norm;
        basis_.push_back(std::move(w));
        return true;
    }

    void pop() { basis_.pop_back(); }
    std::size_t rank() const noexcept { return basis_.size(); }

private:
    std::size_t dim_;
    double threshold_;
    std::vector<std::vector<double>> basis_;
};

} // namespace detail

/// CR(r, s): every q-column submatrix has at least 2q + s nonzero rows.
/// Subsets are visited by increasing q, lexicographically within q, so the
/// witness is the first violation in that order. Throws BudgetExceeded once
/// more than `budget` subsets would be needed.
inline CountingVerdict counting_rule(const SparsityPattern& pattern, std::size_t s,
                                     std::size_t budget = std::numeric_limits<std::size_t>::max())
{
    const std::size_t r = pattern.cols();
    const detail::ColumnBits bits(pattern);
    std::vector<std::uint64_t> scratch;
    CountingVerdict verdict;

    for (std::size_t q = 1; q <= r; ++q) {
        std::vector<std::size_t> idx(q);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        do {
            if (verdict.checked_subsets >= budget)
                throw Error(ErrorKind::BudgetExceeded, "counting_rule: more than " + std::to_string(budget) +
                                                           " column subsets");
            ++verdict.checked_subsets;
            const std::size_t rows = bits.union_count(idx, scratch);
            if (rows < 2 * q + s) {
                verdict.satisfied = false;
                verdict.witness = CountingWitness{q, idx, rows};
                return verdict;
            }
        } while (detail::next_combination(idx, r));
    }
    return verdict;
}

/// The three matrix conditions that are necessary for CR(r, s) and, for
/// r <= 4, sufficient:
///   (i)   single columns have >= 2 + s and column pairs >= 4 + s nonzero rows,
///   (ii)  all r columns together have >= 2r + s nonzero rows,
///   (iii) every leave-one-column-out block has >= 2(r - 1) + s nonzero rows.
/// Violations are reported in the order q = 1, 2, r - 1, r.
inline CountingVerdict simple_counting_checks(const SparsityPattern& pattern, std::size_t s)
{
    const std::size_t r = pattern.cols();
    const std::size_t m = pattern.rows();
    CountingVerdict verdict;
    auto fail = [&](std::vector<std::size_t> cols, std::size_t rows) {
        verdict.satisfied = false;
        const std::size_t q = cols.size();
        verdict.witness = CountingWitness{q, std::move(cols), rows};
        return verdict;
    };

    // (i): entry (j, l) of 1 * delta + delta^T (1 - delta) counts rows in
    // column l or column j.
    std::vector<std::size_t> col_count(r);
    for (std::size_t j = 0; j < r; ++j)
        col_count[j] = pattern.col_count(j);
    for (std::size_t j = 0; j < r; ++j) {
        ++verdict.checked_subsets;
        if (col_count[j] < 2 + s)
            return fail({j}, col_count[j]);
    }
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t l = j + 1; l < r; ++l) {
            ++verdict.checked_subsets;
            std::size_t only_j = 0;
            for (std::size_t i = 0; i < m; ++i)
                only_j += pattern(i, j) && !pattern(i, l);
            const std::size_t rows = col_count[l] + only_j;
            if (rows < 4 + s)
                return fail({j, l}, rows);
        }

    // Row sums of delta, used by (ii) and (iii).
    std::vector<std::size_t> row_sum(m, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < r; ++j)
            row_sum[i] += pattern(i, j);

    // (iii): delta (1 - I) has column j equal to the row sums without column j.
    if (r >= 2) {
        for (std::size_t j = 0; j < r; ++j) {
            ++verdict.checked_subsets;
            std::size_t rows = 0;
            for (std::size_t i = 0; i < m; ++i)
                rows += (row_sum[i] - pattern(i, j)) > 0;
            if (rows < 2 * (r - 1) + s) {
                std::vector<std::size_t> cols;
                for (std::size_t c = 0; c < r; ++c)
                    if (c != j)
                        cols.push_back(c);
                return fail(std::move(cols), rows);
            }
        }
    }

    // (ii)
    if (r >= 1) {
        ++verdict.checked_subsets;
        std::size_t rows = 0;
        for (std::size_t i = 0; i < m; ++i)
            rows += row_sum[i] > 0;
        if (rows < 2 * r + s) {
            std::vector<std::size_t> cols(r);
            std::iota(cols.begin(), cols.end(), std::size_t{0});
            return fail(std::move(cols), rows);
        }
    }
    return verdict;
}

/// Pivot-row upper bound l_j <= m - 2(r - z_j + 1), with 1-based l_j and
/// z_j the rank of l_j among the sorted pivots. False for colliding pivots.
inline bool glt_ar_condition(const PivotSet& pivots, std::size_t m)
{
    if (!pivots.distinct())
        return false;
    const auto r = static_cast<long long>(pivots.size());
    for (std::size_t j = 0; j < pivots.size(); ++j) {
        const auto l = static_cast<long long>(pivots[j]) + 1;
        const auto z = static_cast<long long>(pivots.ranks()[j]) + 1;
        if (l > static_cast<long long>(m) - 2 * (r - z + 1))
            return false;
    }
    return true;
}

/// Brute-force RD(r, s): for every deletion of s rows, two disjoint r-row
/// blocks of full rank must remain. Ranks use the absolute threshold
/// tol * max|loading|. Refuses when C(m, s) * C(m - s, r) exceeds `budget`.
inline bool row_deletion_oracle(const Matrix& loading, std::size_t s, double tol = default_tol,
                                std::size_t budget = default_budget)
{
    detail::require_positive_tol(tol);
    const std::size_t m = loading.rows();
    const std::size_t r = loading.cols();
    if (s > m)
        return false;
    const double work = detail::binomial(m, s) * detail::binomial(m - s, r);
    if (work > static_cast<double>(budget))
        throw Error(ErrorKind::BudgetExceeded,
                    "row_deletion_oracle: " + std::to_string(static_cast<unsigned long long>(work)) +
                        " combinations exceed budget " + std::to_string(budget));
    if (r == 0)
        return true;
    const double thr = tol * loading.max_abs();

    std::vector<bool> nonzero_row(m, false);
    for (std::size_t i = 0; i < m; ++i)
        for (double v : loading.row(i))
            if (std::abs(v) > thr)
                nonzero_row[i] = true;

    // Does `rows` contain two disjoint full-rank r-subsets?
    auto has_disjoint_pair = [&](const std::vector<std::size_t>& rows) {
        if (rows.size() < 2 * r)
            return false;
        detail::SpanTracker first(r, thr);
        std::vector<bool> in_first(rows.size(), false);

        auto rest_full_rank = [&]() {
            detail::SpanTracker rest(r, thr);
            for (std::size_t t = 0; t < rows.size() && rest.rank() < r; ++t)
                if (!in_first[t])
                    rest.push(loading.row(rows[t]));
            return rest.rank() == r;
        };

        // Depth-first over independent prefixes of the first block.
        auto search = [&](auto&& self, std::size_t start) -> bool {
            if (first.rank() == r)
                return rest_full_rank();
            const std::size_t need = r - first.rank();
            for (std::size_t t = start; t + need <= rows.size(); ++t) {
                if (!first.push(loading.row(rows[t])))
                    continue;
                in_first[t] = true;
                const bool ok = self(self, t + 1);
                in_first[t] = false;
                first.pop();
                if (ok)
                    return true;
            }
            return false;
        };
        return search(search, 0);
    };

    std::vector<std::size_t> del(s);
    std::iota(del.begin(), del.end(), std::size_t{0});
    std::vector<bool> deleted(m);
    do {
        std::fill(deleted.begin(), deleted.end(), false);
        for (std::size_t d : del)
            deleted[d] = true;
        std::vector<std::size_t> rows;
        for (std::size_t i = 0; i < m; ++i)
            if (!deleted[i] && nonzero_row[i])
                rows.push_back(i);
        if (!has_disjoint_pair(rows))
            return false;
    } while (s > 0 && detail::next_combination(del, m));
    return true;
}

struct ReportOptions {
    std::size_t s = 1;
    std::size_t budget = default_budget;
    double tol = default_tol;
};

/// Combined verdict: GLT structure, GLT-AR, the fast counting checks, the
/// exhaustive rule when r > 4, and the row-deletion oracle when loadings are
/// supplied and the search fits the budget.
inline IdentificationReport identification_report(const SparsityPattern& pattern,
                                                  const std::optional<Matrix>& loading = std::nullopt,
                                                  const ReportOptions& opt = {})
{
    IdentificationReport rep;
    rep.s = opt.s;
    rep.is_unordered_glt = is_unordered_glt(pattern);
    rep.glt_ar_ok = rep.is_unordered_glt && glt_ar_condition(pivot_rows(pattern), pattern.rows());

    CountingVerdict fast = simple_counting_checks(pattern, opt.s);
    if (!fast.satisfied || pattern.cols() <= 4) {
        rep.counting = std::move(fast);
    } else {
        try {
            rep.counting = counting_rule(pattern, opt.s, opt.budget);
            rep.exhaustive = true;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::BudgetExceeded)
                throw;
        }
    }

    if (loading) {
        if (loading->rows() != pattern.rows() || loading->cols() != pattern.cols())
            throw Error(ErrorKind::DimensionMismatch, "loading shape differs from pattern shape");
        try {
            rep.rd_oracle = row_deletion_oracle(*loading, opt.s, opt.tol, opt.budget);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::BudgetExceeded)
                throw;
        }
    }

    if (!rep.is_unordered_glt || !rep.counting)
        rep.verdict = Verdict::Inconclusive;
    else
        rep.verdict = rep.counting->satisfied ? Verdict::Identified : Verdict::NotIdentified;
    return rep;
}

} // namespace glt

#endif // GLT_IDENTIFICATION_HPP

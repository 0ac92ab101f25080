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


#ifndef GLT_LINALG_HPP
#define GLT_LINALG_HPP

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "glt/error.hpp"
#include "glt/matrix.hpp"

namespace glt {

/// Relative zero threshold shared by every module: |x| <= tol * max|entry|.
inline constexpr double default_tol = 1e-10;

struct RrefResult {
    Matrix rref;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
    /// Square row transform with transform * input == rref.
    Matrix transform;
};

struct QrResult {
    Matrix q;
    Matrix r;
};

namespace detail {

inline void require_positive_tol(double tol)
{
    if (!(tol > 0.0) || !std::isfinite(tol))
        throw Error(ErrorKind::InvalidArgument, "tolerance must be a positive finite number");
}

inline void swap_rows(Matrix& m, std::size_t a, std::size_t b) noexcept
{
    if (a == b)
        return;
    auto ra = m.row(a);
    auto rb = m.row(b);
    for (std::size_t j = 0; j < ra.size(); ++j)
        std::swap(ra[j], rb[j]);
}

// row(dst) -= f * row(src)
inline void axpy_row(Matrix& m, std::size_t dst, std::size_t src, double f) noexcept
{
    auto d = m.row(dst);
    auto s = m.row(src);
    for (std::size_t j = 0; j < d.size(); ++j)
        d[j] -= f * s[j];
}

} // namespace detail

/// Gauss-Jordan elimination with partial pivoting inside each scanned column.
/// Columns are still visited left to right, so the pivot columns are those of
/// the exact reduced row echelon form. Entries at or below tol * max|a| count
/// as zero; rows past the rank are returned as exact zeros.
inline RrefResult rref(const Matrix& a, double tol = default_tol)
{
    detail::require_positive_tol(tol);
    RrefResult res{a, {}, 0, Matrix::identity(a.rows())};
    Matrix& b = res.rref;
    Matrix& t = res.transform;
    const double thr = tol * a.max_abs();

    std::size_t r = 0;
    for (std::size_t c = 0; c < b.cols() && r < b.rows(); ++c) {
        std::size_t p = r;
        for (std::size_t i = r + 1; i < b.rows(); ++i)
            if (std::abs(b(i, c)) > std::abs(b(p, c)))
                p = i;
        if (!(std::abs(b(p, c)) > thr)) {
            for (std::size_t i = r; i < b.rows(); ++i)
                b(i, c) = 0.0;
            continue;
        }
        detail::swap_rows(b, p, r);
        detail::swap_rows(t, p, r);

        const double inv = 1.0 / b(r, c);
        for (double& v : b.row(r))
            v *= inv;
        for (double& v : t.row(r))
            v *= inv;
        b(r, c) = 1.0;

        for (std::size_t i = 0; i < b.rows(); ++i) {
            if (i == r)
                continue;
            const double f = b(i, c);
            if (f == 0.0)
                continue;
            detail::axpy_row(b, i, r, f);
            detail::axpy_row(t, i, r, f);
            b(i, c) = 0.0;
        }
        res.pivot_cols.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < b.rows(); ++i)
        for (double& v : b.row(i))
            v = 0.0;
    res.rank = r;
    return res;
}

inline std::size_t matrix_rank(const Matrix& a, double tol = default_tol)
{
    return rref(a, tol).rank;
}

/// Householder QR of a square matrix with the diagonal of R forced
/// nonnegative. Columns that are already zero below the diagonal are left
/// untouched, so upper triangular input with positive diagonal gives Q = I
/// exactly.
inline QrResult qr_decompose(const Matrix& a, double tol = default_tol)
{
    detail::require_positive_tol(tol);
    if (a.rows() != a.cols())
        throw Error(ErrorKind::DimensionMismatch, "qr_decompose expects a square matrix");
    const std::size_t n = a.rows();
    Matrix r = a;
    Matrix q = Matrix::identity(n);
    std::vector<double> v(n);

    for (std::size_t j = 0; j + 1 < n; ++j) {
        double tail = 0.0;
        for (std::size_t i = j + 1; i < n; ++i)
            tail += r(i, j) * r(i, j);
        if (tail == 0.0)
            continue;
        const double x0 = r(j, j);
        const double norm = std::sqrt(x0 * x0 + tail);
        const double alpha = x0 >= 0.0 ? -norm : norm;
        v[j] = x0 - alpha;
        for (std::size_t i = j + 1; i < n; ++i)
            v[i] = r(i, j);
        const double vv = v[j] * v[j] + tail;

        // R <- H R on rows j.., columns j..
        for (std::size_t c = j; c < n; ++c) {
            double s = 0.0;
            for (std::size_t i = j; i < n; ++i)
                s += v[i] * r(i, c);
            s *= 2.0 / vv;
            for (std::size_t i = j; i < n; ++i)
                r(i, c) -= s * v[i];
        }
        // Q <- Q H on columns j..
        for (std::size_t row = 0; row < n; ++row) {
            double s = 0.0;
            for (std::size_t i = j; i < n; ++i)
                s += q(row, i) * v[i];
            s *= 2.0 / vv;
            for (std::size_t i = j; i < n; ++i)
                q(row, i) -= s * v[i];
        }
        r(j, j) = alpha;
        for (std::size_t i = j + 1; i < n; ++i)
            r(i, j) = 0.0;
    }

    for (std::size_t j = 0; j < n; ++j) {
        if (r(j, j) < 0.0) {
            for (double& x : r.row(j))
                x = -x;
            for (std::size_t i = 0; i < n; ++i)
                q(i, j) = -q(i, j);
        }
    }

    const double thr = tol * a.max_abs();
    for (std::size_t j = 0; j < n; ++j)
        if (!(std::abs(r(j, j)) > thr))
            throw Error(ErrorKind::RankDeficient,
                        "qr_decompose: |r_jj| below tolerance at column " + std::to_string(j + 1));
    return {std::move(q), std::move(r)};
}

} // namespace glt

#endif // GLT_LINALG_HPP

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


#ifndef GLT_TESTS_FIXTURES_HPP
#define GLT_TESTS_FIXTURES_HPP

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "glt/glt.hpp"

namespace fixtures {

using Columns = std::vector<std::vector<std::size_t>>; // 1-based rows per column

inline glt::SparsityPattern pattern_from_columns(std::size_t m, const Columns& cols)
{
    glt::SparsityPattern p(m, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i : cols[j])
            p.set(i - 1, j, true);
    return p;
}

/// Deterministic generic values on a pattern; leaders positive, others of mixed sign.
inline glt::Matrix generic_loading(const glt::SparsityPattern& p, double base = 0.7)
{
    glt::Matrix out(p.rows(), p.cols());
    for (std::size_t j = 0; j < p.cols(); ++j) {
        bool first = true;
        for (std::size_t i = 0; i < p.rows(); ++i) {
            if (!p(i, j))
                continue;
            const double v = base + 0.1 * static_cast<double>((3 * i + 7 * j) % 11);
            out(i, j) = first ? v : ((i + j) % 3 == 0 ? -v : v);
            first = false;
        }
    }
    return out;
}

// Ordered GLT pattern with 22 rows, pivots (1,3,10,11,14,17).
inline const Columns glt_left_columns = {
    {1, 3, 4, 6, 9, 10, 11, 16, 17, 19},
    {3, 4, 6, 10, 11, 13, 14, 17, 21, 22},
    {10, 11, 13, 14, 16, 17, 19, 21, 22},
    {11, 14, 16, 18, 21},
    {14, 16, 17, 18, 19, 21, 22},
    {17, 18, 19, 21},
};

// The same columns reordered (2,3,1,4,5,6): an unordered GLT pattern.
inline const Columns glt_center_columns = {
    glt_left_columns[1], glt_left_columns[2], glt_left_columns[0],
    glt_left_columns[3], glt_left_columns[4], glt_left_columns[5],
};

// Positive lower triangular counterpart.
inline const Columns plt_columns = {
    {1, 3, 4, 6, 9, 10, 11, 16, 17, 19},
    {2, 3, 4, 6, 10, 11, 13, 14, 17, 21, 22},
    {3, 10, 11, 13, 14, 16, 17, 19, 21, 22},
    {4, 11, 14, 16, 18, 21},
    {5, 14, 16, 17, 18, 19, 21, 22},
    {6, 17, 18, 19, 21},
};

inline glt::SparsityPattern glt_left(std::size_t m = 22) { return pattern_from_columns(m, glt_left_columns); }
inline glt::SparsityPattern glt_center(std::size_t m = 22) { return pattern_from_columns(m, glt_center_columns); }
inline glt::SparsityPattern plt_pattern(std::size_t m = 22) { return pattern_from_columns(m, plt_columns); }

/// 6 x 2 dedicated loading: rows 1-3 on factor 1, rows 4-6 on factor 2.
inline glt::Matrix dedicated6()
{
    return {{0.9, 0.0}, {0.8, 0.0}, {0.7, 0.0}, {0.0, 0.6}, {0.0, 0.5}, {0.0, 0.4}};
}

/// 5 x 2 dedicated loading: factor 2 has only two measurements.
inline glt::Matrix dedicated5()
{
    return {{0.9, 0.0}, {0.8, 0.0}, {0.7, 0.0}, {0.0, 0.6}, {0.0, 0.5}};
}

inline glt::SparsityPattern dedicated6_pattern()
{
    return {{1, 0}, {1, 0}, {1, 0}, {0, 1}, {0, 1}, {0, 1}};
}

inline glt::SparsityPattern dedicated5_pattern() { return {{1, 0}, {1, 0}, {1, 0}, {0, 1}, {0, 1}}; }

/// 2 x 2 rotation [[cos a, (-1)^b sin a], [-sin a, (-1)^b cos a]].
inline glt::Matrix rotation2(double a, int b)
{
    const double s = b % 2 ? -1.0 : 1.0;
    return {{std::cos(a), s * std::sin(a)}, {-std::sin(a), s * std::cos(a)}};
}

inline Eigen::MatrixXd to_eigen(const glt::Matrix& a)
{
    Eigen::MatrixXd e(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            e(i, j) = a(i, j);
    return e;
}

inline glt::Matrix from_eigen(const Eigen::MatrixXd& e)
{
    glt::Matrix a(e.rows(), e.cols());
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j)
            a(i, j) = e(i, j);
    return a;
}

inline std::size_t svd_rank(const glt::Matrix& a, double rel = 1e-9)
{
    if (a.rows() == 0 || a.cols() == 0)
        return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a));
    const auto& sv = svd.singularValues();
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > rel * sv(0))
            ++r;
    return r;
}

/// Haar-distributed orthogonal matrix from a QR of a Gaussian matrix.
inline glt::Matrix random_orthogonal(std::size_t n, std::mt19937_64& rng)
{
    std::normal_distribution<double> z;
    Eigen::MatrixXd g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            g(i, j) = z(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (std::size_t j = 0; j < n; ++j)
        if (r(j, j) < 0)
            q.col(j) *= -1.0;
    return from_eigen(q);
}

/// Random ordered GLT loading: strictly increasing pivots, positive leaders,
/// Bernoulli(fill) entries below each pivot with values bounded away from 0.
inline glt::Matrix random_ordered_glt(std::size_t m, std::size_t r, double fill, std::mt19937_64& rng,
                                      bool plt = false)
{
    std::vector<std::size_t> rows(m);
    for (std::size_t i = 0; i < m; ++i)
        rows[i] = i;
    std::vector<std::size_t> piv(r);
    if (plt) {
        for (std::size_t j = 0; j < r; ++j)
            piv[j] = j;
    } else {
        std::shuffle(rows.begin(), rows.end(), rng);
        piv.assign(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(r));
        std::sort(piv.begin(), piv.end());
    }
    std::uniform_real_distribution<double> mag(0.3, 1.5);
    std::bernoulli_distribution coin(0.5), keep(fill);
    glt::Matrix out(m, r);
    for (std::size_t j = 0; j < r; ++j) {
        out(piv[j], j) = mag(rng);
        for (std::size_t i = piv[j] + 1; i < m; ++i)
            if (keep(rng))
                out(i, j) = coin(rng) ? mag(rng) : -mag(rng);
    }
    return out;
}

/// Random GLT pattern: distinct increasing pivots, Bernoulli(fill) below.
inline glt::SparsityPattern random_glt_pattern(std::size_t m, std::size_t r, double fill, std::mt19937_64& rng)
{
    return glt::sparsity_of(random_ordered_glt(m, r, fill, rng));
}

/// Continuous-uniform loadings on a pattern, magnitudes in [0.5, 1.5], random signs.
inline glt::Matrix uniform_loading(const glt::SparsityPattern& p, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> mag(0.5, 1.5);
    std::bernoulli_distribution coin(0.5);
    glt::Matrix out(p.rows(), p.cols());
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j)
            if (p(i, j))
                out(i, j) = coin(rng) ? mag(rng) : -mag(rng);
    return out;
}

/// Counting rule by brute force over every nonempty column subset (bitmask).
inline bool naive_counting_rule(const glt::SparsityPattern& p, std::size_t s)
{
    const std::size_t r = p.cols();
    for (std::size_t mask = 1; mask < (std::size_t{1} << r); ++mask) {
        std::size_t q = 0, rows = 0;
        for (std::size_t j = 0; j < r; ++j)
            q += (mask >> j) & 1;
        for (std::size_t i = 0; i < p.rows(); ++i) {
            bool any = false;
            for (std::size_t j = 0; j < r; ++j)
                any = any || (((mask >> j) & 1) && p(i, j));
            rows += any;
        }
        if (rows < 2 * q + s)
            return false;
    }
    return true;
}

/// Lower-triangle mean squared error written as a plain double loop.
inline double naive_mse(const std::vector<glt::VarianceDecomposition>& draws, const glt::VarianceDecomposition& truth)
{
    const std::size_t m = truth.rows();
    auto omega = [](const glt::VarianceDecomposition& d, std::size_t i, std::size_t l) {
        double v = 0.0;
        for (std::size_t j = 0; j < d.factors(); ++j)
            v += d.loading()(i, j) * d.loading()(l, j);
        return i == l ? v + d.idio()[i] : v;
    };
    double total = 0.0;
    for (const auto& d : draws) {
        double sum = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t l = 0; l <= i; ++l) {
                const double e = omega(d, i, l) - omega(truth, i, l);
                sum += e * e;
            }
        total += sum / (static_cast<double>(m * (m + 1)) / 2.0);
    }
    return total / static_cast<double>(draws.size());
}

/// Largest gap between the empirical CDF of `xs` and `cdf`.
template <class Cdf>
double ks_statistic(std::vector<double> xs, Cdf cdf)
{
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

/// Asymptotic Kolmogorov-Smirnov critical value at the 1% level.
inline double ks_critical_1pct(std::size_t n) { return 1.628 / std::sqrt(static_cast<double>(n)); }

} // namespace fixtures

#endif // GLT_TESTS_FIXTURES_HPP

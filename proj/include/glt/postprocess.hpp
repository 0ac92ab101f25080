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


#ifndef GLT_POSTPROCESS_HPP
#define GLT_POSTPROCESS_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "glt/error.hpp"
#include "glt/identification.hpp"
#include "glt/overfit.hpp"
#include "glt/simulate.hpp"
#include "glt/structure.hpp"

namespace glt {

struct FilterResult {
    std::vector<RecoveredTruth> kept;
    std::size_t total = 0;
    double m_v = 0.0; ///< percent of draws kept
    std::map<ErrorKind, std::size_t> rejected;
};

/// Keeps the variance-identified draws: split columns, check the active
/// pattern against CR(r, 1) and recover the truth. Failures are counted per
/// reason, never raised.
inline FilterResult filter_identified(const DrawArchive& archive, double tol = default_tol,
                                      std::size_t budget = default_budget)
{
    FilterResult out;
    out.total = archive.draws.size();
    for (const Draw& d : archive.draws) {
        try {
            out.kept.push_back(recover_truth(d.loading, d.idio, tol, budget));
        } catch (const Error& e) {
            ++out.rejected[e.kind()];
        }
    }
    out.m_v = out.total == 0 ? 0.0 : 100.0 * static_cast<double>(out.kept.size()) / static_cast<double>(out.total);
    return out;
}

struct FactorCountEstimate {
    std::size_t r_hat = 0;
    double ordinate = 0.0;       ///< against r_true when given, else r_hat
    double ordinate_r_hat = 0.0; ///< relative frequency of r_hat
    std::optional<double> ordinate_r_true;
    std::map<std::size_t, std::size_t> histogram;
    std::size_t total = 0;
};

/// Posterior mode of the number of active columns; ties go to the smaller r.
inline FactorCountEstimate estimate_r(std::span<const RecoveredTruth> kept,
                                      std::optional<std::size_t> r_true = std::nullopt)
{
    if (kept.empty())
        throw Error(ErrorKind::EmptyArchive, "estimate_r: no kept draws");
    FactorCountEstimate est;
    est.total = kept.size();
    for (const RecoveredTruth& d : kept)
        ++est.histogram[d.r];
    std::size_t best = 0;
    for (const auto& [r, count] : est.histogram)
        if (count > best) {
            best = count;
            est.r_hat = r;
        }
    const auto total = static_cast<double>(est.total);
    est.ordinate_r_hat = static_cast<double>(best) / total;
    if (r_true) {
        const auto it = est.histogram.find(*r_true);
        est.ordinate_r_true = it == est.histogram.end() ? 0.0 : static_cast<double>(it->second) / total;
    }
    est.ordinate = est.ordinate_r_true.value_or(est.ordinate_r_hat);
    return est;
}

/// Average over draws of the squared covariance error on the lower triangle
/// (diagonal included), divided by m(m + 1) / 2.
inline double mse_omega(std::span<const VarianceDecomposition> draws, const VarianceDecomposition& truth)
{
    if (draws.empty())
        throw Error(ErrorKind::EmptyArchive, "mse_omega: no draws");
    const Matrix omega = implied_covariance(truth);
    const std::size_t m = omega.rows();
    const double cells = static_cast<double>(m * (m + 1) / 2);
    std::vector<double> per_draw;
    per_draw.reserve(draws.size());
    for (const VarianceDecomposition& d : draws) {
        if (d.rows() != m)
            throw Error(ErrorKind::DimensionMismatch, "mse_omega: draw and truth differ in m");
        const Matrix omega_d = implied_covariance(d);
        double sq = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t l = 0; l <= i; ++l) {
                const double e = omega_d(i, l) - omega(i, l);
                sq += e * e;
            }
        per_draw.push_back(sq / cells);
    }
    // Summed in sorted order so the result does not depend on draw order.
    std::sort(per_draw.begin(), per_draw.end());
    double total = 0.0;
    for (double v : per_draw)
        total += v;
    return total / static_cast<double>(draws.size());
}

inline double mse_omega(std::span<const RecoveredTruth> kept, const VarianceDecomposition& truth)
{
    std::vector<VarianceDecomposition> draws;
    draws.reserve(kept.size());
    for (const RecoveredTruth& d : kept)
        draws.push_back(d.decomposition());
    return mse_omega(draws, truth);
}

struct PostprocessSummary {
    double m_v = 0.0;
    std::size_t draws_total = 0;
    std::size_t draws_kept = 0;
    std::optional<std::size_t> r_true;
    std::size_t r_hat = 0;
    double ordinate = 0.0;
    double ordinate_r_hat = 0.0;
    std::optional<double> ordinate_r_true;
    std::map<std::size_t, std::size_t> r_histogram;
    std::optional<double> mse_omega;
};

/// Filter, factor-count estimate and MSE against an optional truth, whose
/// column count is taken as r_true.
inline PostprocessSummary postprocess(const DrawArchive& archive,
                                      const std::optional<VarianceDecomposition>& truth = std::nullopt,
                                      double tol = default_tol, std::size_t budget = default_budget)
{
    archive.validate();
    const FilterResult filtered = filter_identified(archive, tol, budget);
    PostprocessSummary sum;
    sum.m_v = filtered.m_v;
    sum.draws_total = filtered.total;
    sum.draws_kept = filtered.kept.size();
    if (truth)
        sum.r_true = truth->factors();
    if (filtered.kept.empty())
        return sum;
    const FactorCountEstimate est = estimate_r(filtered.kept, sum.r_true);
    sum.r_hat = est.r_hat;
    sum.ordinate = est.ordinate;
    sum.ordinate_r_hat = est.ordinate_r_hat;
    sum.ordinate_r_true = est.ordinate_r_true;
    sum.r_histogram = est.histogram;
    if (truth)
        sum.mse_omega = mse_omega(std::span<const RecoveredTruth>(filtered.kept), *truth);
    return sum;
}

} // namespace glt

#endif // GLT_POSTPROCESS_HPP

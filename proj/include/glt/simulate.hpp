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


#ifndef GLT_SIMULATE_HPP
#define GLT_SIMULATE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "glt/error.hpp"
#include "glt/identification.hpp"
#include "glt/matrix.hpp"
#include "glt/overfit.hpp"
#include "glt/random.hpp"
#include "glt/rotation.hpp"
#include "glt/structure.hpp"

namespace glt {

enum class Scenario { Dedicated, Block, Dense };

constexpr std::string_view to_string(Scenario s) noexcept
{
    switch (s) {
    case Scenario::Dedicated: return "dedicated";
    case Scenario::Block: return "block";
    case Scenario::Dense: return "dense";
    }
    return "unknown";
}

inline Scenario parse_scenario(std::string_view name)
{
    if (name == "dedicated")
        return Scenario::Dedicated;
    if (name == "block")
        return Scenario::Block;
    if (name == "dense")
        return Scenario::Dense;
    throw Error(ErrorKind::InvalidArgument, "unknown scenario '" + std::string(name) + "'");
}

struct ScenarioSpec {
    Scenario kind = Scenario::Dedicated;
    std::size_t m = 30;
    std::size_t r = 5;
    std::size_t t = 150;
    std::uint64_t seed = 0;
};

// Substream ids; every sampler gets its own so one seed can drive them all.
namespace stream {
inline constexpr std::uint64_t scenario = 0;
inline constexpr std::uint64_t data = 1;
inline constexpr std::uint64_t slab = 2;
inline constexpr std::uint64_t loading = 3;
inline constexpr std::uint64_t draws = 1u << 20; ///< draw i uses draws + i
} // namespace stream

/// Zero/nonzero layout of a scenario.
///   Dedicated: m / r consecutive rows per factor.
///   Block: the first m / 2 rows load on the first r / 2 factors, the rest on
///          the remaining factors.
///   Dense: all ones.
inline SparsityPattern scenario_layout(const ScenarioSpec& spec)
{
    const std::size_t m = spec.m;
    const std::size_t r = spec.r;
    if (m == 0 || r == 0)
        throw Error(ErrorKind::InvalidLayout, "scenario needs m >= 1 and r >= 1");
    SparsityPattern p(m, r);
    switch (spec.kind) {
    case Scenario::Dedicated: {
        if (m % r != 0)
            throw Error(ErrorKind::InvalidLayout, "dedicated scenario needs r to divide m");
        const std::size_t per = m / r;
        for (std::size_t i = 0; i < m; ++i)
            p.set(i, i / per, true);
        break;
    }
    case Scenario::Block: {
        if (m % 2 != 0 || r < 2)
            throw Error(ErrorKind::InvalidLayout, "block scenario needs even m and r >= 2");
        const std::size_t half = m / 2;
        const std::size_t first = r / 2;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < r; ++j)
                p.set(i, j, (i < half) == (j < first));
        break;
    }
    case Scenario::Dense:
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < r; ++j)
                p.set(i, j, true);
        break;
    }
    return p;
}

/// Scenario loadings lambda_ij = (-1)^b (1 + 0.1 z), P(b = 1) = 0.2,
/// z ~ N(0, 1) on the layout's nonzeros, with Sigma = I.
inline VarianceDecomposition generate_scenario(const ScenarioSpec& spec)
{
    const SparsityPattern layout = scenario_layout(spec);
    Philox4x32 rng(spec.seed, stream::scenario);
    std::bernoulli_distribution flip(0.2);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix lam(spec.m, spec.r);
    for (std::size_t i = 0; i < spec.m; ++i)
        for (std::size_t j = 0; j < spec.r; ++j)
            if (layout(i, j)) {
                const double sign = flip(rng) ? -1.0 : 1.0;
                lam(i, j) = sign * (1.0 + 0.1 * normal(rng));
            }
    return {std::move(lam), std::vector<double>(spec.m, 1.0)};
}

/// The scenario's GLT representation, used as the truth for harness archives.
inline VarianceDecomposition scenario_truth(const ScenarioSpec& spec, double tol = default_tol)
{
    const VarianceDecomposition raw = generate_scenario(spec);
    GltRotationResult rot = rotate_to_glt(raw.loading(), tol);
    return {std::move(rot.glt), std::vector<double>(raw.idio().begin(), raw.idio().end())};
}

/// t x m draws of y = Lambda f + e with f ~ N(0, I) and e ~ N(0, Sigma).
inline Matrix sample_data(const VarianceDecomposition& decomp, std::size_t t, std::uint64_t seed)
{
    if (t == 0)
        throw Error(ErrorKind::InvalidArgument, "sample_data needs t >= 1");
    const Matrix& lam = decomp.loading();
    const std::size_t m = lam.rows();
    const std::size_t r = lam.cols();
    Philox4x32 rng(seed, stream::data);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> sd(m);
    for (std::size_t i = 0; i < m; ++i)
        sd[i] = std::sqrt(decomp.idio()[i]);

    Matrix y(t, m);
    std::vector<double> f(r);
    for (std::size_t n = 0; n < t; ++n) {
        for (double& v : f)
            v = normal(rng);
        for (std::size_t i = 0; i < m; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < r; ++j)
                s += lam(i, j) * f[j];
            y(n, i) = s + sd[i] * normal(rng);
        }
    }
    return y;
}

struct GammaPrior {
    double shape = 1.0;
    double rate = 1.0;
};

struct InverseGammaPrior {
    double shape = 1.0;
    double scale = 1.0;
};

/// Either a fixed value or a Gamma hyperprior.
using Hyperparameter = std::variant<double, GammaPrior>;

/// Hyperparameters of the one- or two-parameter beta slab prior and the
/// spike-and-slab loadings.
struct PriorConfig {
    std::size_t k_max = 14;
    Hyperparameter alpha = GammaPrior{6.0, 2.0};
    Hyperparameter gamma = 1.0; ///< 1 gives the one-parameter beta prior
    InverseGammaPrior kappa{2.0, 2.0};
    InverseGammaPrior sigma{2.5, 1.5};

    void validate() const
    {
        auto ok = [](const Hyperparameter& h) {
            if (const double* v = std::get_if<double>(&h))
                return *v > 0.0 && std::isfinite(*v);
            const auto& g = std::get<GammaPrior>(h);
            return g.shape > 0.0 && g.rate > 0.0;
        };
        if (!ok(alpha) || !ok(gamma) || !(kappa.shape > 0.0 && kappa.scale > 0.0) ||
            !(sigma.shape > 0.0 && sigma.scale > 0.0))
            throw Error(ErrorKind::InvalidArgument, "prior hyperparameters must be strictly positive");
    }
};

namespace detail {

template <class Rng>
double draw_hyper(const Hyperparameter& h, Rng& rng)
{
    if (const double* v = std::get_if<double>(&h))
        return *v;
    const auto& g = std::get<GammaPrior>(h);
    return std::gamma_distribution<double>(g.shape, 1.0 / g.rate)(rng);
}

template <class Rng>
double draw_beta(double a, double b, Rng& rng)
{
    const double x = std::gamma_distribution<double>(a, 1.0)(rng);
    const double y = std::gamma_distribution<double>(b, 1.0)(rng);
    const double sum = x + y;
    return sum > 0.0 ? x / sum : 0.5;
}

template <class Rng>
double draw_inverse_gamma(const InverseGammaPrior& p, Rng& rng)
{
    double g = 0.0;
    while (!(g > 0.0))
        g = std::gamma_distribution<double>(p.shape, 1.0)(rng);
    return p.scale / g;
}

} // namespace detail

/// tau_j | k ~ Beta(gamma alpha / k, gamma), j = 1..k.
inline std::vector<double> sample_slab_probabilities(const PriorConfig& cfg, std::size_t k, std::uint64_t seed)
{
    cfg.validate();
    if (k == 0)
        throw Error(ErrorKind::InvalidArgument, "sample_slab_probabilities needs k >= 1");
    Philox4x32 rng(seed, stream::slab);
    const double alpha = detail::draw_hyper(cfg.alpha, rng);
    const double gamma = detail::draw_hyper(cfg.gamma, rng);
    std::vector<double> tau(k);
    for (double& t : tau)
        t = detail::draw_beta(gamma * alpha / static_cast<double>(k), gamma, rng);
    return tau;
}

struct SparseLoadingDraw {
    Matrix loading;
    SparsityPattern pattern;
    std::vector<double> idio;
    std::vector<double> tau;
    double kappa = 0.0;
};

/// Dirac spike-and-slab loadings for given slab probabilities:
/// delta_ij ~ Bernoulli(tau_j), lambda_ij ~ N(0, kappa sigma_i^2) on the slab.
inline SparseLoadingDraw sample_sparse_loading(const PriorConfig& cfg, std::span<const double> tau, std::size_t m,
                                               std::uint64_t seed)
{
    cfg.validate();
    if (m == 0 || tau.empty())
        throw Error(ErrorKind::InvalidArgument, "sample_sparse_loading needs m, k >= 1");
    for (double t : tau)
        if (!(t >= 0.0 && t <= 1.0))
            throw Error(ErrorKind::InvalidArgument, "slab probabilities must lie in [0, 1]");
    const std::size_t k = tau.size();
    Philox4x32 rng(seed, stream::loading);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);

    SparseLoadingDraw out{Matrix(m, k), SparsityPattern(m, k), std::vector<double>(m),
                          std::vector<double>(tau.begin(), tau.end()), 0.0};
    out.kappa = detail::draw_inverse_gamma(cfg.kappa, rng);
    for (double& s : out.idio)
        s = detail::draw_inverse_gamma(cfg.sigma, rng);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            const bool on = unif(rng) < tau[j];
            const double z = normal(rng);
            if (on) {
                out.pattern.set(i, j, true);
                out.loading(i, j) = z * std::sqrt(out.kappa * out.idio[i]);
            }
        }
    return out;
}

/// Spike-and-slab loadings with tau drawn from the slab prior first.
inline SparseLoadingDraw sample_sparse_loading(const PriorConfig& cfg, std::size_t m, std::size_t k,
                                               std::uint64_t seed)
{
    const std::vector<double> tau = sample_slab_probabilities(cfg, k, seed);
    return sample_sparse_loading(cfg, tau, m, seed);
}

struct Draw {
    Matrix loading;
    std::vector<double> idio;
    SparsityPattern pattern;
};

struct ArchiveMeta {
    std::size_t m = 0;
    std::size_t k_max = 0;
    std::uint64_t seed = 0;
    std::string scenario;
};

struct DrawArchive {
    ArchiveMeta meta;
    std::vector<Draw> draws;

    void validate() const
    {
        for (std::size_t n = 0; n < draws.size(); ++n) {
            const Draw& d = draws[n];
            const std::string where = "draw " + std::to_string(n + 1) + ": ";
            if (d.loading.rows() != meta.m || d.idio.size() != meta.m)
                throw Error(ErrorKind::DimensionMismatch, where + "row count differs from archive m");
            if (d.loading.cols() > meta.k_max)
                throw Error(ErrorKind::InvalidArgument, where + "k exceeds k_max");
            if (d.pattern.rows() != d.loading.rows() || d.pattern.cols() != d.loading.cols())
                throw Error(ErrorKind::DimensionMismatch, where + "pattern shape differs from loading");
            for (double s : d.idio)
                if (!(s > 0.0))
                    throw Error(ErrorKind::InvalidArgument, where + "idiosyncratic variances must be positive");
            for (std::size_t i = 0; i < d.loading.rows(); ++i)
                for (std::size_t j = 0; j < d.loading.cols(); ++j)
                    if (!d.pattern(i, j) && d.loading(i, j) != 0.0)
                        throw Error(ErrorKind::InvalidArgument, where + "nonzero loading outside the pattern");
        }
    }
};

struct HarnessConfig {
    std::size_t n_draws = 1000;
    double spurious_rate = 0.0; ///< Poisson mean of spurious columns per draw
    double noise = 0.0;         ///< sd of the perturbation on truth nonzeros
    std::size_t max_spurious = std::numeric_limits<std::size_t>::max();
    std::uint64_t seed = 0;
    std::string scenario = "custom";
};

/// Synthetic posterior draws built the way an overfitting sampler sees them:
/// the truth (optionally perturbed on its nonzeros), plus Poisson-many
/// spurious columns at random non-pivot rows with the variance moved out of
/// Sigma, followed by a random signed permutation. Draw n uses its own
/// substream, so draws do not depend on generation order.
inline DrawArchive synthesize_draw_archive(const VarianceDecomposition& truth, const HarnessConfig& cfg,
                                           double tol = default_tol)
{
    if (!(cfg.spurious_rate >= 0.0) || !(cfg.noise >= 0.0))
        throw Error(ErrorKind::InvalidArgument, "spurious_rate and noise must be nonnegative");
    const Matrix& lam = truth.loading();
    const SparsityPattern pattern = sparsity_of(lam, tol);
    if (!is_unordered_glt(pattern))
        throw Error(ErrorKind::NotGlt, "harness truth must have an unordered GLT structure");
    if (cfg.max_spurious != std::numeric_limits<std::size_t>::max() &&
        !counting_rule(pattern, 1 + cfg.max_spurious).satisfied)
        throw Error(ErrorKind::NotIdentified, "harness truth violates CR(r, 1 + max_spurious)");

    const std::size_t m = lam.rows();
    const PivotSet truth_pivots = pivot_rows(pattern);
    DrawArchive archive;
    archive.meta = {m, 0, cfg.seed, cfg.scenario};
    archive.draws.reserve(cfg.n_draws);

    for (std::size_t n = 0; n < cfg.n_draws; ++n) {
        Philox4x32 rng(cfg.seed, stream::draws + n);
        std::normal_distribution<double> normal(0.0, 1.0);
        std::uniform_real_distribution<double> unif(0.0, 1.0);

        Matrix loading = lam;
        if (cfg.noise > 0.0)
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < lam.cols(); ++j)
                    if (pattern(i, j))
                        loading(i, j) += cfg.noise * normal(rng);
        VarianceDecomposition decomp(std::move(loading),
                                     std::vector<double>(truth.idio().begin(), truth.idio().end()));

        std::size_t n_spur = 0;
        if (cfg.spurious_rate > 0.0)
            n_spur = std::poisson_distribution<std::size_t>(cfg.spurious_rate)(rng);
        n_spur = std::min(n_spur, cfg.max_spurious);

        std::vector<bool> taken(m, false);
        for (std::size_t p : truth_pivots.pivots())
            taken[p] = true;
        for (std::size_t t = 0; t < n_spur; ++t) {
            std::vector<std::size_t> free_rows;
            for (std::size_t i = 0; i < m; ++i)
                if (!taken[i])
                    free_rows.push_back(i);
            if (free_rows.empty())
                break;
            const std::size_t row =
                free_rows[std::uniform_int_distribution<std::size_t>(0, free_rows.size() - 1)(rng)];
            const double mag = std::sqrt(decomp.idio()[row] * (0.1 + 0.8 * unif(rng)));
            const double value = unif(rng) < 0.5 ? -mag : mag;
            decomp = inject_spurious(decomp, row, value, tol);
            taken[row] = true;
        }

        const std::size_t k = decomp.factors();
        SignedPermutation sp = SignedPermutation::identity(k);
        for (std::size_t c = k; c-- > 1;)
            std::swap(sp.perm[c], sp.perm[std::uniform_int_distribution<std::size_t>(0, c)(rng)]);
        for (int& s : sp.signs)
            s = unif(rng) < 0.5 ? -1 : 1;

        Draw draw;
        draw.loading = apply_signed_permutation(decomp.loading(), sp);
        draw.idio.assign(decomp.idio().begin(), decomp.idio().end());
        draw.pattern = SparsityPattern(m, k);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < k; ++j)
                draw.pattern.set(i, j, draw.loading(i, j) != 0.0);
        archive.meta.k_max = std::max(archive.meta.k_max, k);
        archive.draws.push_back(std::move(draw));
    }
    return archive;
}

} // namespace glt

#endif // GLT_SIMULATE_HPP

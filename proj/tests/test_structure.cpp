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


#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"

using glt::Matrix;
using glt::SignedPermutation;
using glt::SparsityPattern;

namespace {

SignedPermutation random_sp(std::size_t k, std::mt19937_64& rng)
{
    SignedPermutation sp = SignedPermutation::identity(k);
    std::shuffle(sp.perm.begin(), sp.perm.end(), rng);
    std::bernoulli_distribution coin(0.5);
    for (int& s : sp.signs)
        s = coin(rng) ? 1 : -1;
    return sp;
}

std::vector<std::size_t> one_based(const glt::PivotSet& p)
{
    std::vector<std::size_t> out;
    for (std::size_t v : p.pivots())
        out.push_back(v + 1);
    return out;
}

} // namespace

TEST(SparsityOf, Examples)
{
    EXPECT_EQ(glt::sparsity_of(Matrix(3, 2)), SparsityPattern(3, 2));
    EXPECT_EQ(glt::sparsity_of(fixtures::dedicated6()), fixtures::dedicated6_pattern());

    const Matrix beta3{{0.9, 0, 0}, {0.8, 0, 0.5}, {0.7, 0, 0}, {0, 0.6, 0}, {0, 0.5, 0}, {0, 0.4, 0}};
    const SparsityPattern p = glt::sparsity_of(beta3);
    EXPECT_EQ(p.col_count(2), 1u);
    EXPECT_TRUE(p(1, 2));
}

TEST(SparsityOf, TinyEntriesRelativeToScaleAreZero)
{
    const Matrix a{{1.0, 1e-12}, {0.0, 2.0}};
    EXPECT_FALSE(glt::sparsity_of(a)(0, 1));
    EXPECT_TRUE(glt::sparsity_of(a, 1e-14)(0, 1));
}

TEST(PivotRows, Examples)
{
    EXPECT_EQ(one_based(glt::pivot_rows(fixtures::glt_left(23))), (std::vector<std::size_t>{1, 3, 10, 11, 14, 17}));
    EXPECT_EQ(one_based(glt::pivot_rows(fixtures::glt_left())), (std::vector<std::size_t>{1, 3, 10, 11, 14, 17}));
    const SparsityPattern id = glt::sparsity_of(Matrix::identity(4));
    const glt::PivotSet p = glt::pivot_rows(id);
    EXPECT_EQ(one_based(p), (std::vector<std::size_t>{1, 2, 3, 4}));
    EXPECT_TRUE(p.ordered());
    EXPECT_EQ(one_based(glt::pivot_rows(fixtures::dedicated5_pattern())), (std::vector<std::size_t>{1, 4}));
}

TEST(PivotRows, RanksAndZeroColumn)
{
    const glt::PivotSet p = glt::pivot_rows(fixtures::glt_center());
    EXPECT_EQ(one_based(p), (std::vector<std::size_t>{3, 10, 1, 11, 14, 17}));
    EXPECT_EQ(p.ranks()[0], 1u);
    EXPECT_EQ(p.ranks()[2], 0u);
    EXPECT_FALSE(p.ordered());
    EXPECT_TRUE(p.distinct());
    try {
        glt::pivot_rows(SparsityPattern{{1, 0}, {1, 0}});
        FAIL();
    } catch (const glt::Error& e) {
        EXPECT_EQ(e.kind(), glt::ErrorKind::ZeroColumn);
    }
}

TEST(UnorderedGlt, Examples)
{
    EXPECT_TRUE(glt::is_unordered_glt(fixtures::glt_center()));
    EXPECT_TRUE(glt::is_unordered_glt(fixtures::glt_left()));
    EXPECT_FALSE(glt::is_unordered_glt(SparsityPattern{{1, 1}, {1, 0}, {0, 1}}));
    EXPECT_FALSE(glt::is_unordered_glt(SparsityPattern{{1, 0}, {1, 0}, {1, 0}}));
}

TEST(OrderedGlt, Examples)
{
    Matrix lam = fixtures::dedicated6();
    EXPECT_TRUE(glt::is_ordered_glt(lam));
    lam(3, 1) = -0.6;
    EXPECT_FALSE(glt::is_ordered_glt(lam));
    EXPECT_TRUE(glt::is_ordered_glt(fixtures::generic_loading(fixtures::plt_pattern())));
    EXPECT_TRUE(glt::is_ordered_glt(fixtures::generic_loading(fixtures::glt_left())));
    EXPECT_FALSE(glt::is_ordered_glt(fixtures::generic_loading(fixtures::glt_center())));
    EXPECT_TRUE(glt::is_ordered_glt(glt::VarianceDecomposition(fixtures::dedicated6(), std::vector<double>(6, 1.0))));
}

TEST(NormalizeToOrdered, CenterMapsToLeft)
{
    const Matrix left = fixtures::generic_loading(fixtures::glt_left());
    SignedPermutation shuffle{{2, 0, 1, 3, 4, 5}, {1, -1, 1, -1, 1, 1}};
    const Matrix center = glt::apply_signed_permutation(left, shuffle);
    EXPECT_EQ(glt::sparsity_of(center), fixtures::glt_center());
    const auto [ordered, sp] = glt::normalize_to_ordered(center);
    EXPECT_EQ(ordered, left);
    EXPECT_EQ(sp, shuffle.inverse());
}

TEST(NormalizeToOrdered, AlreadyOrderedAndSignFlip)
{
    const Matrix lam = fixtures::dedicated6();
    const auto [same, id] = glt::normalize_to_ordered(lam);
    EXPECT_EQ(same, lam);
    EXPECT_TRUE(id.is_identity());

    Matrix flipped = lam;
    for (std::size_t i = 3; i < 6; ++i)
        flipped(i, 1) = -flipped(i, 1);
    const auto [fixed, sp] = glt::normalize_to_ordered(flipped);
    EXPECT_EQ(fixed, lam);
    EXPECT_EQ(sp.perm, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(sp.signs, (std::vector<int>{1, -1}));
}

TEST(NormalizeToOrdered, RejectsCollidingPivots)
{
    try {
        glt::normalize_to_ordered(Matrix{{1, 1}, {1, 0}, {0, 1}});
        FAIL();
    } catch (const glt::Error& e) {
        EXPECT_EQ(e.kind(), glt::ErrorKind::NotGlt);
    }
}

TEST(NormalizeToOrdered, PropertyIdempotentAndInvariantUnderSignedPermutation)
{
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t r = 1 + rep % 6, m = r + 3 + rep % 9;
        const Matrix lam = fixtures::random_ordered_glt(m, r, 0.6, rng);
        const auto [again, id] = glt::normalize_to_ordered(lam);
        EXPECT_EQ(again, lam);
        EXPECT_TRUE(id.is_identity());

        const Matrix shuffled = glt::apply_signed_permutation(lam, random_sp(r, rng));
        const auto [base, sp0] = glt::normalize_to_ordered(shuffled);
        EXPECT_EQ(base, lam);
        EXPECT_EQ(glt::apply_signed_permutation(shuffled, sp0), base);
        const Matrix twice = glt::apply_signed_permutation(shuffled, random_sp(r, rng));
        EXPECT_EQ(glt::normalize_to_ordered(twice).first, base);
    }
}

TEST(SignedPermutation, ApplyMatchesMatrixProductAndInverse)
{
    std::mt19937_64 rng(12);
    const Matrix lam = fixtures::generic_loading(fixtures::glt_left());
    EXPECT_EQ(glt::apply_signed_permutation(lam, SignedPermutation::identity(6)), lam);
    for (int rep = 0; rep < 50; ++rep) {
        const SignedPermutation sp = random_sp(6, rng);
        const Matrix out = glt::apply_signed_permutation(lam, sp);
        EXPECT_EQ(out, lam * sp.to_matrix());
        EXPECT_EQ(glt::apply_signed_permutation(out, sp.inverse()), lam);
    }
}

TEST(SignedPermutation, SwapWithBothSignsNegative)
{
    const Matrix lam = fixtures::dedicated6();
    const SignedPermutation sp{{1, 0}, {-1, -1}};
    const Matrix out = glt::apply_signed_permutation(lam, sp);
    const Matrix expected{{0, -0.9}, {0, -0.8}, {0, -0.7}, {-0.6, 0}, {-0.5, 0}, {-0.4, 0}};
    EXPECT_EQ(out, expected);
    EXPECT_EQ(glt::implied_covariance({out, std::vector<double>(6, 1.0)}),
              glt::implied_covariance({lam, std::vector<double>(6, 1.0)}));
}

TEST(SignedPermutation, ValidateRejectsBadInput)
{
    EXPECT_THROW((SignedPermutation{{0, 0}, {1, 1}}.validate()), glt::Error);
    EXPECT_THROW((SignedPermutation{{0, 1}, {1, 2}}.validate()), glt::Error);
    EXPECT_THROW((SignedPermutation{{0, 1}, {1}}.validate()), glt::Error);
    EXPECT_THROW(glt::apply_signed_permutation(Matrix(2, 3), SignedPermutation::identity(2)), glt::Error);
}

TEST(ImpliedCovariance, Examples)
{
    EXPECT_EQ(glt::implied_covariance({Matrix(3, 2), std::vector<double>(3, 1.0)}), Matrix::identity(3));

    const Matrix omega = glt::implied_covariance({fixtures::dedicated6(), std::vector<double>(6, 1.0)});
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t l = 3; l < 6; ++l) {
            EXPECT_EQ(omega(i, l), 0.0);
            EXPECT_EQ(omega(l, i), 0.0);
        }
    EXPECT_DOUBLE_EQ(omega(0, 1), 0.9 * 0.8);
    EXPECT_DOUBLE_EQ(omega(0, 0), 0.81 + 1.0);
}

TEST(ImpliedCovariance, PropertySymmetricAndSignedPermutationInvariant)
{
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> var(0.2, 2.0);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t r = 1 + rep % 5, m = 2 * r + 1 + rep % 7;
        const Matrix lam = fixtures::random_ordered_glt(m, r, 0.5, rng);
        std::vector<double> idio(m);
        for (double& v : idio)
            v = var(rng);
        const Matrix omega = glt::implied_covariance({lam, idio});
        EXPECT_EQ(omega, omega.transpose());
        const Matrix moved = glt::apply_signed_permutation(lam, random_sp(r, rng));
        EXPECT_LE(glt::max_abs_diff(glt::implied_covariance({moved, idio}), omega), 1e-14);
    }
}

TEST(VarianceDecomposition, RejectsBadIdio)
{
    EXPECT_THROW(glt::VarianceDecomposition(Matrix(2, 1), std::vector<double>{1.0}), glt::Error);
    EXPECT_THROW(glt::VarianceDecomposition(Matrix(2, 1), std::vector<double>{1.0, 0.0}), glt::Error);
}

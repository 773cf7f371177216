// Copyright 2026 The qdense Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdense/modring.h"

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "test_support.h"

namespace qdense {
namespace {

using testing::brute_force_independent;
using testing::int_matrix;
using testing::random_vec;

TEST(ModVec, ReducesOnIngest) {
    ModVec v(5, {-1, 7, 0});
    EXPECT_EQ(v.to_vector(), (std::vector<std::int64_t>{4, 2, 0}));
    EXPECT_EQ(v.str(), "(4,2,0)");
    EXPECT_EQ((3 * v).to_vector(), (std::vector<std::int64_t>{2, 1, 0}));
    EXPECT_TRUE((v - v).is_zero());
}

TEST(ModVec, RejectsMixedModuli) {
    ModVec a(5, 2), b(7, 2), c(5, 3);
    EXPECT_THROW(a += b, usage_error);
    EXPECT_THROW(a += c, usage_error);
    std::vector<ModVec> mixed{a, b};
    EXPECT_THROW(linear_independent(mixed), usage_error);
}

TEST(ModScalar, Congruences) {
    EXPECT_EQ(solve_congruence(2, 4, 6), 2);
    EXPECT_EQ(solve_congruence(2, 3, 6), std::nullopt);
    EXPECT_EQ(solve_congruence(0, 0, 7), 0);
    EXPECT_EQ(inverse_mod(3, 7), 5);
    EXPECT_EQ(inverse_mod(2, 4), std::nullopt);
    EXPECT_TRUE(is_prime(7));
    EXPECT_FALSE(is_prime(9));
}

TEST(LinearIndependent, Examples) {
    std::vector<ModVec> standard{ModVec(5, {1, 0}), ModVec(5, {0, 1})};
    EXPECT_TRUE(linear_independent(standard));
    std::vector<ModVec> zero_divisor{ModVec(4, {2, 0})};
    EXPECT_FALSE(linear_independent(zero_divisor));

    const CheckMatrix m = testing::five_qudit();
    std::vector<ModVec> cols{m.alpha(0), m.alpha(1), m.alpha(2), m.beta(1), m.beta(2)};
    EXPECT_TRUE(linear_independent(cols));
}

// Exhaustive over every vector set where that is cheap, sampled elsewhere.
TEST(LinearIndependent, AgreesWithDefinition) {
    std::mt19937_64 rng(11);
    for (std::int64_t d = 2; d <= 6; ++d) {
        for (std::size_t k = 1; k <= 3; ++k) {
            for (std::size_t n = 1; n <= 4; ++n) {
                const std::size_t total = saturating_pow(d, k * n);
                if (total <= 20'000) {
                    std::vector<std::int64_t> digits(k * n, 0);
                    for (std::size_t idx = 0; idx < total; ++idx) {
                        std::vector<ModVec> vs(k, ModVec(d, n));
                        for (std::size_t t = 0; t < k * n; ++t) vs[t / n].set(t % n, digits[t]);
                        ASSERT_EQ(linear_independent(vs), brute_force_independent(vs))
                            << "d=" << d << " k=" << k << " n=" << n << " first=" << vs[0].str();
                        for (std::size_t t = k * n; t-- > 0;) {
                            if (++digits[t] < d) break;
                            digits[t] = 0;
                        }
                    }
                } else {
                    for (int trial = 0; trial < 1500; ++trial) {
                        std::vector<ModVec> vs;
                        for (std::size_t i = 0; i < k; ++i) vs.push_back(random_vec(d, n, rng));
                        // Bias toward zero divisors and near-dependent sets.
                        if (trial % 3 == 0 && d % 2 == 0) vs[0] = (d / 2) * vs[0];
                        if (trial % 5 == 0 && k > 1) vs[k - 1] = vs[0] + 2 * vs[1];
                        ASSERT_EQ(linear_independent(vs), brute_force_independent(vs))
                            << "d=" << d << " k=" << k << " n=" << n << " first=" << vs[0].str();
                    }
                }
            }
        }
    }
}

TEST(SpanMembership, Examples) {
    SpanSet s(5, 3, {ModVec(5, {1, 2, 3})});
    auto zero = span_membership(ModVec(5, 3), s);
    ASSERT_TRUE(zero);
    EXPECT_TRUE(s.combine(*zero).is_zero());

    const CheckMatrix m = testing::four_qudit();
    SpanSet beta_alpha(7, 4, {m.beta(0), m.alpha(0)});
    const ModVec target(7, {1, 0, 0, 0});
    EXPECT_EQ(3 * m.beta(0) - m.alpha(0), target);
    auto w = span_membership(target, beta_alpha);
    ASSERT_TRUE(w);
    EXPECT_EQ(beta_alpha.combine(*w), target);

    EXPECT_FALSE(span_membership(ModVec(3, {1, 1}), SpanSet(3, 2, {ModVec(3, {1, 0})})));
}

TEST(SpanMembership, WitnessesReproduceVectors) {
    std::mt19937_64 rng(5);
    for (std::int64_t d : {2, 4, 6, 7, 9, 12}) {
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t n = 1 + trial % 4, k = 1 + trial % 3;
            std::vector<ModVec> gens;
            for (std::size_t i = 0; i < k; ++i) gens.push_back(random_vec(d, n, rng));
            if (d % 2 == 0) gens[0] = 2 * gens[0];
            SpanSet s(d, n, gens);
            const auto elements = enumerate_span(s);
            std::set<ModVec> in_span(elements.begin(), elements.end());
            for (int probe = 0; probe < 10; ++probe) {
                const ModVec v = random_vec(d, n, rng);
                auto w = span_membership(v, s);
                EXPECT_EQ(w.has_value(), in_span.count(v) == 1);
                if (w) EXPECT_EQ(s.combine(*w), v);
            }
            EXPECT_EQ(span_size(s), elements.size());
        }
    }
}

TEST(EnumerateSpan, Examples) {
    EXPECT_EQ(enumerate_span(SpanSet(3, 2, {})), (std::vector<ModVec>{ModVec(3, 2)}));
    EXPECT_EQ(enumerate_span(SpanSet(2, 2, {ModVec(2, {1, 0}), ModVec(2, {0, 1})})).size(), 4u);
    EXPECT_EQ(enumerate_span(SpanSet(4, 2, {ModVec(4, {2, 0})})),
              (std::vector<ModVec>{ModVec(4, {0, 0}), ModVec(4, {2, 0})}));
}

TEST(EnumerateSpan, CapIsEnforced) {
    SpanSet s(7, 2, std::vector<ModVec>(4, ModVec(7, {1, 1})));
    EXPECT_THROW(enumerate_span(s, 100), resource_error);
    EXPECT_EQ(enumerate_span(s, 7 * 7 * 7 * 7).size(), 7u);
}

TEST(EnumerateSpan, WitnessesAreFirstInLexOrder) {
    SpanSet s(3, 2, {ModVec(3, {1, 0}), ModVec(3, {1, 0}), ModVec(3, {0, 1})});
    const auto elements = enumerate_span_with_witnesses(s);
    ASSERT_EQ(elements.size(), 9u);
    for (const auto& e : elements) {
        EXPECT_EQ(s.combine(e.coefficients), e.vector);
        // Any witness with a nonzero first coefficient has an earlier one using the second slot.
        EXPECT_EQ(e.coefficients[0], 0) << e.vector.str();
    }
}

TEST(Coordinates, Examples) {
    const RingBasis id = RingBasis::standard(5, 4);
    EXPECT_EQ(coordinates_in_basis(id[2], id), ModVec::unit(5, 4, 2));
    const ModVec v(5, {4, 3, 2, 1});
    EXPECT_EQ(coordinates_in_basis(v, id), v);

    const RingBasis x = testing::four_qudit_basis();
    EXPECT_EQ(coordinates_in_basis(ModVec(7, {3, 5, 3, 1}), x), ModVec(7, {1, 3, 5, 3}));
    EXPECT_EQ(coordinate(ModVec(7, {3, 5, 3, 1}), x, 0), 1);
}

TEST(Coordinates, NonBasisRejected) {
    EXPECT_THROW(RingBasis({ModVec(4, {2, 0}), ModVec(4, {0, 1})}), usage_error);
    EXPECT_THROW(RingBasis({ModVec(5, {1, 0})}), usage_error);
}

TEST(Coordinates, RoundTrip) {
    std::mt19937_64 rng(17);
    for (std::int64_t d : {2, 3, 4, 5, 6, 7, 8}) {
        for (int trial = 0; trial < 1000; ++trial) {
            const std::size_t n = 1 + trial % 4;
            std::optional<RingBasis> basis;
            while (!basis) {
                std::vector<ModVec> vs;
                for (std::size_t i = 0; i < n; ++i) vs.push_back(random_vec(d, n, rng));
                if (linear_independent(vs)) basis.emplace(std::move(vs));
            }
            const ModVec v = random_vec(d, n, rng);
            const ModVec c = coordinates_in_basis(v, *basis);
            ModVec back(d, n);
            for (std::size_t j = 0; j < n; ++j) back += c[j] * (*basis)[j];
            ASSERT_EQ(back, v);
        }
    }
}

TEST(SmithNormalForm, Examples) {
    const auto id = smith_normal_form<std::int64_t>(IntMatrix::Identity(3, 3));
    EXPECT_EQ(id.D, IntMatrix::Identity(3, 3));
    EXPECT_EQ(smith_normal_form<std::int64_t>(int_matrix({{2, 0}, {0, 4}})).D, int_matrix({{2, 0}, {0, 4}}));
    EXPECT_EQ(smith_normal_form<std::int64_t>(int_matrix({{1, 1}, {1, 3}})).D, int_matrix({{1, 0}, {0, 2}}));
}

// Exact integer determinant by fraction-free elimination.
__int128 bareiss_determinant(const IntMatrix& m) {
    const Eigen::Index n = m.rows();
    std::vector<std::vector<__int128>> a(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) a[static_cast<std::size_t>(i)].push_back(m(i, j));
    }
    __int128 sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < a.size(); ++k) {
        if (a[k][k] == 0) {
            std::size_t s = k + 1;
            while (s < a.size() && a[s][k] == 0) ++s;
            if (s == a.size()) return 0;
            std::swap(a[k], a[s]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < a.size(); ++i) {
            for (std::size_t j = k + 1; j < a.size(); ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        }
        prev = a[k][k];
    }
    return sign * a.back().back();
}

TEST(SmithNormalForm, RandomMatricesDecompose) {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<std::int64_t> entry(-9, 9);
    for (int trial = 0; trial < 500; ++trial) {
        const Eigen::Index r = 1 + trial % 4, c = 1 + (trial / 4) % 4;
        IntMatrix m(r, c);
        for (Eigen::Index i = 0; i < r; ++i) {
            for (Eigen::Index j = 0; j < c; ++j) m(i, j) = entry(rng);
        }
        const auto snf = smith_normal_form<std::int64_t>(m);
        ASSERT_EQ(snf.U * m * snf.V, snf.D);
        const __int128 du = bareiss_determinant(snf.U), dv = bareiss_determinant(snf.V);
        EXPECT_TRUE(du == 1 || du == -1);
        EXPECT_TRUE(dv == 1 || dv == -1);
        const Eigen::Index diag = std::min(r, c);
        for (Eigen::Index i = 0; i < r; ++i) {
            for (Eigen::Index j = 0; j < c; ++j) {
                if (i != j) ASSERT_EQ(snf.D(i, j), 0);
            }
        }
        for (Eigen::Index i = 0; i + 1 < diag; ++i) {
            ASSERT_GE(snf.D(i, i), 0);
            if (snf.D(i, i) == 0) {
                ASSERT_EQ(snf.D(i + 1, i + 1), 0);
            } else {
                ASSERT_EQ(snf.D(i + 1, i + 1) % snf.D(i, i), 0);
            }
        }
    }
}

}  // namespace
}  // namespace qdense

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

#include "qdense/densecode.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "test_support.h"

namespace qdense {
namespace {

using testing::random_complete_stabilizer;
using testing::random_partition;
using testing::random_vec;

Partition singles(std::size_t n) {
    std::vector<std::vector<std::size_t>> senders;
    for (std::size_t i = 0; i + 1 < n; ++i) senders.push_back({i});
    return Partition(n, std::move(senders), {n - 1});
}

RingBasis random_basis(std::int64_t d, std::size_t n, std::mt19937_64& rng) {
    while (true) {
        std::vector<ModVec> vs;
        for (std::size_t i = 0; i < n; ++i) vs.push_back(random_vec(d, n, rng));
        if (linear_independent(vs)) return RingBasis(std::move(vs));
    }
}

bool subset_of(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    return std::all_of(a.begin(), a.end(), [&](auto x) { return std::find(b.begin(), b.end(), x) != b.end(); });
}

TEST(SenderSubspaces, Examples) {
    const auto bell = sender_subspaces(testing::bell(3), Partition::parse("1|2", 2));
    ASSERT_EQ(bell.size(), 1u);
    EXPECT_EQ(span_size(bell[0].span), 9u);
    EXPECT_EQ(bell[0].span.generators(), (std::vector<ModVec>{ModVec(3, {1, 0}), ModVec(3, {0, 1})}));

    const auto ghz = sender_subspaces(testing::ghz(3, 4), Partition::parse("1|2|3|4", 4));
    ASSERT_EQ(ghz.size(), 3u);
    EXPECT_EQ(ghz[1].span.generators(), (std::vector<ModVec>{ModVec(3, {1, 0, 0, 0}), ModVec(3, {0, -1, 1, 0})}));

    // Receiver columns stay out.
    const auto e3 = sender_subspaces(testing::five_qudit(), Partition::parse("1,2|3|4,5", 5));
    ASSERT_EQ(e3.size(), 2u);
    EXPECT_EQ(e3[0].span.generators().size(), 4u);
    EXPECT_EQ(e3[1].span.generators().size(), 2u);
}

TEST(VerifyProtocol, Examples) {
    const CheckMatrix b = testing::bell(3);
    const Partition p = Partition::parse("1|2", 2);
    const Protocol two(3, p, {{{{0, 0}}, {{1, 0}}}});
    EXPECT_TRUE(verify_protocol(two, b));

    // Z on each of two GHZ qudits shifts the same label.
    const CheckMatrix g = testing::ghz(3, 3);
    const Partition q = Partition::parse("1|2|3", 3);
    const Protocol clash(3, q, {{{{0, 0}}, {{0, 1}}}, {{{0, 0}}, {{0, 1}}}});
    EXPECT_FALSE(verify_protocol(clash, g));

    Protocol labelled = clash;
    labelled.compute_labels(g);
    EXPECT_FALSE(verify_protocol(labelled));
    const LabelReport r = check_labels(labelled);
    EXPECT_FALSE(r.distinct);
    EXPECT_EQ(r.messages, 4u);

    EXPECT_THROW(check_labels(clash), usage_error);
}

TEST(VerifyProtocol, StoredTableMustMatch) {
    const CheckMatrix b = testing::bell(3);
    const Partition p = Partition::parse("1|2", 2);
    Protocol proto(3, p, {{{{0, 0}}, {{1, 0}}}}, {{ModVec(3, {0, 0}), ModVec(3, {1, 0})}});
    EXPECT_TRUE(verify_protocol(proto));
    EXPECT_FALSE(verify_protocol(proto, b));
}

TEST(CheckBounds, Examples) {
    const Partition e3 = Partition::parse("1,2|3|4,5", 5);
    const std::vector<std::size_t> a3{125, 25};
    const BoundReport r3 = check_bounds(a3, 5, e3);
    EXPECT_EQ(r3.product, 3125u);
    EXPECT_EQ(r3.capacity, 3125u);
    EXPECT_TRUE(r3.ok());
    EXPECT_TRUE(r3.optimal);
    EXPECT_TRUE(r3.useful);

    const std::vector<std::size_t> over{626, 1};
    const BoundReport bad = check_bounds(over, 5, e3);
    EXPECT_FALSE(bad.sender_ok[0]);
    EXPECT_FALSE(bad.ok());

    const std::vector<std::size_t> a4{14, 14, 9};
    const BoundReport r4 = check_bounds(a4, 7, Partition::parse("1|2|3|4", 4));
    EXPECT_EQ(r4.product, 1764u);
    EXPECT_TRUE(r4.ok());
    EXPECT_FALSE(r4.optimal);
    EXPECT_TRUE(r4.useful);
}

TEST(Theorem1, BellGivesAllShifts) {
    for (std::int64_t d : {2, 3, 5}) {
        const CheckMatrix b = testing::bell(d);
        const Partition p = Partition::parse("1|2", 2);
        const RQSets sets{{{0}}, {{0}}};
        const Protocol proto = theorem1_protocol(b, p, sets);
        ASSERT_EQ(proto.alphabet(), (std::vector<std::size_t>{static_cast<std::size_t>(d * d)}));
        for (std::int64_t j = 0; j < d * d; ++j) {
            EXPECT_EQ(proto.encodings()[0][static_cast<std::size_t>(j)], (LocalEncoding{{j / d, j % d}}));
        }
        EXPECT_TRUE(verify_protocol(proto, b));

        const auto found = synth_theorem1(b, p);
        ASSERT_TRUE(found);
        EXPECT_EQ(found->protocol, proto);
    }
}

TEST(Theorem1, FiveQudit) {
    const CheckMatrix m = testing::five_qudit();
    const Partition p = Partition::parse("1,2|3|4,5", 5);
    const RQSets sets = parse_rq_sets(read_file(testing::fixture_path("five_qudit_d5_sets.json")), 5);
    std::string reason;
    EXPECT_TRUE(theorem1_conditions(m, p, sets, &reason)) << reason;
    const Protocol proto = theorem1_protocol(m, p, sets);
    EXPECT_EQ(proto.alphabet(), (std::vector<std::size_t>{125, 25}));
    EXPECT_TRUE(verify_protocol(proto, m));
    EXPECT_EQ(check_labels(proto).distinct_sums, 3125u);

    const auto found = synth_theorem1(m, p);
    ASSERT_TRUE(found);
    EXPECT_TRUE(check_bounds(found->protocol.alphabet(), 5, p).optimal);
}

TEST(Theorem1, RejectsBadSets) {
    const CheckMatrix m = testing::five_qudit();
    const Partition p = Partition::parse("1,2|3|4,5", 5);
    // Sizes never exceed |T_i|.
    const RQSets small{{{0}, {2}}, {{1}, {}}};
    std::string reason;
    EXPECT_FALSE(theorem1_conditions(m, p, small, &reason));
    EXPECT_FALSE(reason.empty());
    EXPECT_THROW(theorem1_protocol(m, p, small), usage_error);
    // R outside the group.
    const RQSets stray{{{0, 3}, {2}}, {{1}, {2}}};
    EXPECT_FALSE(theorem1_conditions(m, p, stray));
}

TEST(Theorem1, ZeroColumnsLimitTheSender) {
    // The sender's X column is zero, so two independent vectors never exist.
    const CheckMatrix product = testing::load_stabilizer("product_d2.json");
    const auto found = synth_theorem1(product, Partition::parse("1|2", 2));
    EXPECT_FALSE(found);
}

TEST(EnumerateA, Examples) {
    EXPECT_EQ(enumerate_A({}, 5, 3), (std::vector<std::vector<std::int64_t>>{{1, 1, 1}}));
    EXPECT_EQ(enumerate_A({0}, 3, 2), (std::vector<std::vector<std::int64_t>>{{1, 1}, {2, 1}, {3, 1}}));
    const auto a = enumerate_A({0, 2}, 7, 3);
    EXPECT_NE(std::find(a.begin(), a.end(), std::vector<std::int64_t>{2, 1, 3}), a.end());
    for (const auto& v : a) {
        EXPECT_EQ(v[1], 1);
        EXPECT_LE(v[0] * v[2], 7);
    }
    EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
    EXPECT_THROW(enumerate_A({0}, 0, 1), usage_error);
}

TEST(Theorem2, FourQudit) {
    const CheckMatrix m = testing::four_qudit();
    const Partition p = Partition::parse("1|2|3|4", 4);
    const Theorem2Result res = theorem2_pipeline(m, p, testing::four_qudit_basis(), testing::four_qudit_choices());
    const std::vector<std::vector<std::size_t>> P{{0, 2}, {1, 2}, {1}, {0}};
    ASSERT_EQ(res.trace.levels.size(), 4u);
    for (std::size_t j = 0; j < 4; ++j) {
        EXPECT_EQ(res.trace.levels[j].P, P[j]) << "level " << j + 1;
        EXPECT_EQ(res.trace.levels[j].Q, P[j]) << "level " << j + 1;
        for (const auto& e : res.trace.levels[j].entries) EXPECT_EQ(e.c, 1);
    }
    EXPECT_EQ(res.protocol.alphabet(), (std::vector<std::size_t>{14, 14, 9}));
    EXPECT_TRUE(verify_protocol(res.protocol, m));
    EXPECT_EQ(check_labels(res.protocol).distinct_sums, 1764u);
    EXPECT_NO_THROW(check_theorem2_trace(res.trace, m, p));

    // First encoding of sender 1 is lambda = (1, 1) on levels 1 and 4.
    const LocalEncoding first = res.protocol.encodings()[0][0];
    EXPECT_EQ(first, (LocalEncoding{{4, 1}}));
}

TEST(Theorem2, GhzAlphabets) {
    for (std::int64_t d : {3, 5}) {
        for (std::size_t n : {3, 4}) {
            const CheckMatrix m = testing::ghz(d, n);
            const Partition p = singles(n);
            for (const auto& lambda : enumerate_A([&] {
                     std::vector<std::size_t> all(n - 1);
                     std::iota(all.begin(), all.end(), 0);
                     return all;
                 }(),
                                                  d, n - 1)) {
                Theorem2Choices ch;
                ch.a[0] = lambda;
                const Theorem2Result res = theorem2_pipeline(m, p, testing::ghz_basis(m), ch);
                std::vector<std::size_t> expected;
                for (auto l : lambda) expected.push_back(static_cast<std::size_t>(l * d));
                ASSERT_EQ(res.protocol.alphabet(), expected);
                ASSERT_TRUE(verify_protocol(res.protocol, m));
            }
        }
    }
}

TEST(Theorem2, Ghz3x4FromFixtures) {
    const CheckMatrix m = testing::load_stabilizer("ghz_d3_n4.json");
    const RingBasis basis = parse_basis(read_file(testing::fixture_path("ghz_d3_n4_basis.json")), 3, 4);
    const Theorem2Choices ch = parse_choices(read_file(testing::fixture_path("ghz_d3_n4_choices.json")), 3, 4);
    const Theorem2Result res = theorem2_pipeline(m, singles(4), basis, ch);
    EXPECT_EQ(res.protocol.alphabet(), (std::vector<std::size_t>{9, 3, 3}));
    EXPECT_EQ(check_labels(res.protocol).distinct_sums, 81u);
}

TEST(Theorem2, AllOnesIsTrivial) {
    const CheckMatrix m = testing::four_qudit();
    const Partition p = Partition::parse("1|2|3|4", 4);
    Theorem2Choices ch;
    for (std::size_t j = 0; j < 4; ++j) ch.a[j] = {1, 1, 1};
    const Theorem2Result res = theorem2_pipeline(m, p, testing::four_qudit_basis(), ch);
    EXPECT_EQ(res.protocol.alphabet(), (std::vector<std::size_t>{1, 1, 1}));
    EXPECT_TRUE(verify_protocol(res.protocol, m));
}

TEST(Theorem2, UsageErrors) {
    const CheckMatrix m = testing::four_qudit();
    const Partition p = Partition::parse("1|2|3|4", 4);
    const RingBasis x = testing::four_qudit_basis();

    Theorem2Choices too_big;
    too_big.a[0] = {3, 1, 3};
    EXPECT_THROW(theorem2_pipeline(m, p, x, too_big), usage_error);

    Theorem2Choices off_P;
    off_P.a[0] = {1, 2, 1};
    EXPECT_THROW(theorem2_pipeline(m, p, x, off_P), usage_error);

    // Sender 2 has nothing in level 1.
    Theorem2Choices stray;
    stray.z.emplace(std::pair<std::size_t, std::size_t>{1, 0}, ModVec(7, {1, 0, 0, 0}));
    EXPECT_THROW(theorem2_pipeline(m, p, x, stray), usage_error);

    // A vector outside the level.
    Theorem2Choices wrong_level;
    wrong_level.z.emplace(std::pair<std::size_t, std::size_t>{0, 0}, ModVec(7, {1, 0, 0, 0}));
    EXPECT_THROW(theorem2_pipeline(m, p, x, wrong_level), usage_error);

    EXPECT_THROW(theorem2_pipeline(m, p, RingBasis::standard(7, 3)), usage_error);
    EXPECT_THROW(theorem2_pipeline(m, p, x, {}, 10), resource_error);
}

TEST(Theorem2, TraceCheckCatchesTampering) {
    const CheckMatrix m = testing::four_qudit();
    const Partition p = Partition::parse("1|2|3|4", 4);
    Theorem2Result res = theorem2_pipeline(m, p, testing::four_qudit_basis(), testing::four_qudit_choices());
    Theorem2Trace t = res.trace;
    t.levels[0].b[0] = 5;
    EXPECT_THROW(check_theorem2_trace(t, m, p), std::logic_error);
    t = res.trace;
    t.levels[1].P.push_back(0);
    EXPECT_THROW(check_theorem2_trace(t, m, p), std::logic_error);
}

struct SoundnessCase {
    std::int64_t d;
    int count;
};

void PrintTo(const SoundnessCase& s, std::ostream* os) { *os << "d" << s.d << " x" << s.count; }

class Soundness : public ::testing::TestWithParam<SoundnessCase> {};

TEST_P(Soundness, RandomStabilizers) {
    const auto [d, count] = GetParam();
    std::mt19937_64 rng(1000 + static_cast<std::uint64_t>(d));
    std::size_t theorem1_found = 0;
    for (int t = 0; t < count; ++t) {
        const std::size_t n = 1 + static_cast<std::size_t>(t) % 5;
        const CheckMatrix m = random_complete_stabilizer(d, n, rng);
        const Partition p = random_partition(n, rng);

        if (const auto found = synth_theorem1(m, p)) {
            ++theorem1_found;
            ASSERT_TRUE(theorem1_conditions(m, p, found->sets));
            ASSERT_TRUE(verify_protocol(found->protocol, m));
            const BoundReport b = check_bounds(found->protocol.alphabet(), d, p);
            ASSERT_TRUE(b.ok());
            for (std::size_t i = 0; i < p.num_senders(); ++i) {
                const std::size_t size = found->sets.R[i].size() + found->sets.Q[i].size();
                ASSERT_EQ(found->protocol.alphabet()[i], saturating_pow(d, size));
            }
        }

        const Theorem2Result res = theorem2_pipeline(m, p, random_basis(d, n, rng));
        ASSERT_NO_THROW(check_theorem2_trace(res.trace, m, p));
        ASSERT_TRUE(verify_protocol(res.protocol, m));
        ASSERT_TRUE(check_bounds(res.protocol.alphabet(), d, p).ok());
        for (const auto& level : res.trace.levels) ASSERT_TRUE(subset_of(level.Q, level.P));
    }
    EXPECT_GT(theorem1_found, 0u);
}

INSTANTIATE_TEST_SUITE_P(Moduli, Soundness,
                         ::testing::Values(SoundnessCase{2, 100}, SoundnessCase{3, 100}, SoundnessCase{5, 100},
                                           SoundnessCase{7, 100}, SoundnessCase{4, 40}, SoundnessCase{6, 40}),
                         [](const auto& info) { return "d" + std::to_string(info.param.d); });

TEST(Theorem2, CustomAChoicesStaySound) {
    std::mt19937_64 rng(77);
    for (int t = 0; t < 60; ++t) {
        const std::int64_t d = t % 2 == 0 ? 5 : 7;
        const std::size_t n = 2 + static_cast<std::size_t>(t) % 3;
        const CheckMatrix m = random_complete_stabilizer(d, n, rng);
        const Partition p = random_partition(n, rng);
        const RingBasis x = random_basis(d, n, rng);
        const Theorem2Result plain = theorem2_pipeline(m, p, x);
        Theorem2Choices ch;
        for (std::size_t j = 0; j < n; ++j) {
            const auto options = enumerate_A(plain.trace.levels[j].P, d, p.num_senders());
            std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
            ch.a[j] = options[pick(rng)];
        }
        const Theorem2Result res = theorem2_pipeline(m, p, x, ch);
        ASSERT_TRUE(verify_protocol(res.protocol, m));
        ASSERT_TRUE(check_bounds(res.protocol.alphabet(), d, p).ok());
    }
}

}  // namespace
}  // namespace qdense

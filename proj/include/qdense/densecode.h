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

#ifndef QDENSE_DENSECODE_H
#define QDENSE_DENSECODE_H

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qdense/modring.h"
#include "qdense/partition.h"
#include "qdense/stabilizer.h"

namespace qdense {

/// One (a, b) exponent pair per qudit of the sender's group, in group order.
using LocalEncoding = std::vector<std::pair<std::int64_t, std::int64_t>>;

/// S_i = span{alpha_l, beta_l : l in T_i}; generator 2t is alpha, 2t + 1 is beta
/// of the t-th qudit in the group.
struct SenderSubspace {
    std::size_t sender = 0;
    SpanSet span;
};

std::vector<SenderSubspace> sender_subspaces(const CheckMatrix& m, const Partition& p);

class Protocol {
   public:
    Protocol(std::int64_t d, Partition partition, std::vector<std::vector<LocalEncoding>> encodings,
             std::vector<std::vector<GammaLabel>> labels = {});

    std::int64_t modulus() const { return d_; }
    std::size_t num_qudits() const { return partition_.n; }
    std::size_t num_senders() const { return partition_.num_senders(); }
    const Partition& partition() const { return partition_; }
    const std::vector<std::vector<LocalEncoding>>& encodings() const { return encodings_; }
    const std::vector<std::vector<GammaLabel>>& labels() const { return labels_; }
    bool has_labels() const { return !labels_.empty(); }
    std::vector<std::size_t> alphabet() const;

    /// U_{ij} as an n-qudit word, identity off T_i; j is 0-based.
    PauliWord word(std::size_t sender, std::size_t j) const;
    /// Tensor product of one encoding per sender.
    PauliWord message_word(std::span<const std::size_t> message) const;

    /// Fills the label table from the generators.
    void compute_labels(const CheckMatrix& m);

    friend bool operator==(const Protocol&, const Protocol&) = default;

   private:
    std::int64_t d_;
    Partition partition_;
    std::vector<std::vector<LocalEncoding>> encodings_;
    std::vector<std::vector<GammaLabel>> labels_;
};

struct LabelReport {
    bool distinct = false;
    /// Product of the alphabet (saturating).
    std::size_t messages = 0;
    /// Number of distinct label sums found before the first collision.
    std::size_t distinct_sums = 0;
};

/// Distinctness of all label sums over message tuples, by growing the sumset
/// one sender at a time. Requires a label table.
LabelReport check_labels(const Protocol& proto, std::size_t cap = kDefaultSpanCap);

/// check_labels(proto).distinct on the stored table.
bool verify_protocol(const Protocol& proto);

/// Recomputes the labels from m and the encodings, then checks distinctness.
/// A stored table that disagrees with the recomputed one fails.
bool verify_protocol(const Protocol& proto, const CheckMatrix& m);

struct BoundReport {
    std::size_t product = 0;
    std::size_t capacity = 0;
    bool product_ok = false;
    /// b_i <= d^{2|T_i|} per sender.
    std::vector<bool> sender_ok;
    bool optimal = false;
    bool useful = false;

    bool ok() const;
};

BoundReport check_bounds(std::span<const std::size_t> alphabet, std::int64_t d, const Partition& p);

// ---------------------------------------------------------------- theorem 1

/// True iff R, Q satisfy the group, size and independence conditions; fills
/// reason otherwise.
bool theorem1_conditions(const CheckMatrix& m, const Partition& p, const RQSets& sets,
                         std::string* reason = nullptr);

/// a_l is free on Q_i, b_l is free on R_i. Throws usage_error if the conditions fail.
Protocol theorem1_protocol(const CheckMatrix& m, const Partition& p, const RQSets& sets);

struct Theorem1Result {
    RQSets sets;
    Protocol protocol;
};

/// Searches R, Q by decreasing total size; the first admissible assignment in
/// lexicographic mask order wins.
std::optional<Theorem1Result> synth_theorem1(const CheckMatrix& m, const Partition& p);

// ---------------------------------------------------------------- theorem 2

/// All a in Z^m with a_i = 1 off P, a_i >= 1, and prod a_i <= t; ascending lexicographic.
std::vector<std::vector<std::int64_t>> enumerate_A(const std::vector<std::size_t>& P, std::int64_t t,
                                                   std::size_t m);

/// Optional pins, keyed by 0-based (sender, level) and level.
struct Theorem2Choices {
    std::map<std::pair<std::size_t, std::size_t>, ModVec> z;
    std::map<std::size_t, std::vector<std::int64_t>> a;
};

struct Theorem2Entry {
    std::size_t sender = 0;
    ModVec z;
    /// Coefficients of z over the sender subspace generators.
    ModVec witness;
    std::int64_t c = 0;
    std::optional<std::int64_t> eta;
    ModVec y;
};

struct Theorem2Level {
    std::vector<std::size_t> P;
    std::vector<std::int64_t> a;
    std::vector<std::size_t> Q;
    std::vector<std::int64_t> b;
    /// One per member of P, in order.
    std::vector<Theorem2Entry> entries;
};

struct Theorem2Trace {
    RingBasis basis;
    std::vector<Theorem2Level> levels;
    std::vector<std::string> notes;
};

struct Theorem2Result {
    Theorem2Trace trace;
    Protocol protocol;
};

Theorem2Result theorem2_pipeline(const CheckMatrix& m, const Partition& p, const RingBasis& basis,
                                 const Theorem2Choices& choices = {}, std::size_t cap = kDefaultSpanCap);

/// Re-derives every trace invariant; throws std::logic_error on the first violation.
void check_theorem2_trace(const Theorem2Trace& trace, const CheckMatrix& m, const Partition& p);

}  // namespace qdense

#endif  // QDENSE_DENSECODE_H

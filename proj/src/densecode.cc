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

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <unordered_set>

namespace qdense {

namespace {

std::size_t saturating_mul(std::size_t a, std::size_t b) {
    std::size_t out;
    if (__builtin_mul_overflow(a, b, &out)) return std::numeric_limits<std::size_t>::max();
    return out;
}

void require_square(const CheckMatrix& m, const Partition& p, const char* who) {
    if (m.num_generators() != m.num_qudits()) {
        throw usage_error(std::string(who) + ": needs exactly n generators");
    }
    if (p.n != m.num_qudits()) {
        throw usage_error(std::string(who) + ": partition covers " + std::to_string(p.n) + " qudits, matrix has " +
                          std::to_string(m.num_qudits()));
    }
}

bool contains(const std::vector<std::size_t>& v, std::size_t x) { return std::find(v.begin(), v.end(), x) != v.end(); }

}  // namespace

std::vector<SenderSubspace> sender_subspaces(const CheckMatrix& m, const Partition& p) {
    if (p.n != m.num_qudits()) throw usage_error("sender_subspaces: partition and matrix sizes differ");
    std::vector<SenderSubspace> out;
    for (std::size_t i = 0; i < p.num_senders(); ++i) {
        std::vector<ModVec> gens;
        for (auto l : p.senders[i]) {
            gens.push_back(m.alpha(l));
            gens.push_back(m.beta(l));
        }
        out.push_back({i, SpanSet(m.modulus(), m.num_generators(), std::move(gens))});
    }
    return out;
}

// ------------------------------------------------------------------ Protocol

Protocol::Protocol(std::int64_t d, Partition partition, std::vector<std::vector<LocalEncoding>> encodings,
                   std::vector<std::vector<GammaLabel>> labels)
    : d_(d), partition_(std::move(partition)), encodings_(std::move(encodings)), labels_(std::move(labels)) {
    if (d < 2) throw usage_error("Protocol: modulus must be at least 2");
    if (encodings_.size() != partition_.num_senders()) {
        throw usage_error("Protocol: " + std::to_string(encodings_.size()) + " encoding lists for " +
                          std::to_string(partition_.num_senders()) + " senders");
    }
    for (std::size_t i = 0; i < encodings_.size(); ++i) {
        if (encodings_[i].empty()) throw usage_error("Protocol: sender " + std::to_string(i + 1) + " has no encodings");
        for (auto& enc : encodings_[i]) {
            if (enc.size() != partition_.senders[i].size()) {
                throw usage_error("Protocol: encoding of sender " + std::to_string(i + 1) +
                                  " does not match its qudit group");
            }
            for (auto& [a, b] : enc) {
                a = mod(a, d);
                b = mod(b, d);
            }
        }
    }
    if (!labels_.empty()) {
        if (labels_.size() != encodings_.size()) throw usage_error("Protocol: label table has the wrong shape");
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (labels_[i].size() != encodings_[i].size()) throw usage_error("Protocol: label table has the wrong shape");
            for (const auto& l : labels_[i]) {
                if (l.modulus() != d || l.size() != partition_.n) throw usage_error("Protocol: label has the wrong length");
            }
        }
    }
}

std::vector<std::size_t> Protocol::alphabet() const {
    std::vector<std::size_t> out;
    for (const auto& e : encodings_) out.push_back(e.size());
    return out;
}

PauliWord Protocol::word(std::size_t sender, std::size_t j) const {
    const auto& group = partition_.senders.at(sender);
    const auto& enc = encodings_.at(sender).at(j);
    ModVec x(d_, partition_.n), z(d_, partition_.n);
    for (std::size_t t = 0; t < group.size(); ++t) {
        x.set(group[t], enc[t].first);
        z.set(group[t], enc[t].second);
    }
    return PauliWord(0, std::move(x), std::move(z));
}

PauliWord Protocol::message_word(std::span<const std::size_t> message) const {
    if (message.size() != num_senders()) throw std::out_of_range("message has the wrong number of entries");
    PauliWord out = PauliWord::identity(d_, partition_.n);
    for (std::size_t i = 0; i < message.size(); ++i) {
        if (message[i] >= encodings_[i].size()) {
            throw std::out_of_range("message " + std::to_string(message[i] + 1) + " out of range for sender " +
                                    std::to_string(i + 1));
        }
        out = multiply(out, word(i, message[i]));
    }
    return out;
}

void Protocol::compute_labels(const CheckMatrix& m) {
    if (m.modulus() != d_ || m.num_qudits() != partition_.n) {
        throw usage_error("Protocol: check matrix does not match the protocol");
    }
    std::vector<std::vector<GammaLabel>> labels(encodings_.size());
    for (std::size_t i = 0; i < encodings_.size(); ++i) {
        for (std::size_t j = 0; j < encodings_[i].size(); ++j) labels[i].push_back(gamma_label(word(i, j), m));
    }
    labels_ = std::move(labels);
}

LabelReport check_labels(const Protocol& proto, std::size_t cap) {
    if (!proto.has_labels()) throw usage_error("check_labels: protocol has no label table");
    LabelReport report;
    report.messages = 1;
    for (auto b : proto.alphabet()) report.messages = saturating_mul(report.messages, b);
    if (report.messages > saturating_pow(proto.modulus(), proto.num_qudits())) return report;
    if (report.messages > cap) {
        throw resource_error("check_labels: " + std::to_string(report.messages) + " messages exceed cap " +
                             std::to_string(cap));
    }
    std::unordered_set<ModVec, ModVecHash> sums{ModVec(proto.modulus(), proto.num_qudits())};
    for (const auto& labels : proto.labels()) {
        std::unordered_set<ModVec, ModVecHash> next;
        next.reserve(sums.size() * labels.size());
        for (const auto& s : sums) {
            for (const auto& l : labels) next.insert(s + l);
        }
        const bool injective = next.size() == sums.size() * labels.size();
        sums = std::move(next);
        if (!injective) {
            report.distinct_sums = sums.size();
            return report;
        }
    }
    report.distinct_sums = sums.size();
    report.distinct = true;
    return report;
}

bool verify_protocol(const Protocol& proto) { return check_labels(proto).distinct; }

bool verify_protocol(const Protocol& proto, const CheckMatrix& m) {
    Protocol fresh = proto;
    fresh.compute_labels(m);
    if (proto.has_labels() && proto.labels() != fresh.labels()) return false;
    return verify_protocol(fresh);
}

bool BoundReport::ok() const {
    return product_ok && std::all_of(sender_ok.begin(), sender_ok.end(), [](bool b) { return b; });
}

BoundReport check_bounds(std::span<const std::size_t> alphabet, std::int64_t d, const Partition& p) {
    if (alphabet.size() != p.num_senders()) throw usage_error("check_bounds: alphabet length differs from sender count");
    BoundReport r;
    r.product = 1;
    for (auto b : alphabet) r.product = saturating_mul(r.product, b);
    r.capacity = saturating_pow(d, p.n);
    r.product_ok = r.product <= r.capacity;
    r.optimal = r.product == r.capacity;
    bool all_at_least = true, some_above = false;
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
        const std::size_t t = p.senders[i].size();
        r.sender_ok.push_back(alphabet[i] <= saturating_pow(d, 2 * t));
        const std::size_t unassisted = saturating_pow(d, t);
        all_at_least = all_at_least && alphabet[i] >= unassisted;
        some_above = some_above || alphabet[i] > unassisted;
    }
    r.useful = all_at_least && some_above;
    return r;
}

// ----------------------------------------------------------------- theorem 1

bool theorem1_conditions(const CheckMatrix& m, const Partition& p, const RQSets& sets, std::string* reason) {
    auto fail = [&](std::string why) {
        if (reason) *reason = std::move(why);
        return false;
    };
    require_square(m, p, "theorem1_conditions");
    const std::size_t count = p.num_senders();
    if (sets.R.size() != count || sets.Q.size() != count) return fail("R and Q need one set per sender");
    bool some_above = false;
    std::vector<ModVec> vectors;
    for (std::size_t i = 0; i < count; ++i) {
        for (const auto* s : {&sets.R[i], &sets.Q[i]}) {
            std::vector<std::size_t> sorted = *s;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
                return fail("sender " + std::to_string(i + 1) + ": repeated qudit in R or Q");
            }
            for (auto q : sorted) {
                if (!contains(p.senders[i], q)) {
                    return fail("sender " + std::to_string(i + 1) + ": qudit " + std::to_string(q + 1) +
                                " is not in its group");
                }
            }
        }
        const std::size_t size = sets.R[i].size() + sets.Q[i].size();
        const std::size_t t = p.senders[i].size();
        if (size < t) return fail("sender " + std::to_string(i + 1) + ": |R| + |Q| below the group size");
        some_above = some_above || size > t;
        for (auto q : sets.R[i]) vectors.push_back(m.alpha(q));
        for (auto q : sets.Q[i]) vectors.push_back(m.beta(q));
    }
    if (!some_above) return fail("no sender has |R| + |Q| above its group size");
    if (!linear_independent(vectors)) return fail("the selected alpha and beta columns are dependent");
    return true;
}

Protocol theorem1_protocol(const CheckMatrix& m, const Partition& p, const RQSets& sets) {
    std::string reason;
    if (!theorem1_conditions(m, p, sets, &reason)) throw usage_error("theorem1_protocol: " + reason);
    const std::int64_t d = m.modulus();
    std::vector<std::vector<LocalEncoding>> encodings;
    for (std::size_t i = 0; i < p.num_senders(); ++i) {
        const auto& group = p.senders[i];
        // (position in group, true for the Z exponent)
        std::vector<std::pair<std::size_t, bool>> slots;
        for (std::size_t t = 0; t < group.size(); ++t) {
            if (contains(sets.Q[i], group[t])) slots.emplace_back(t, false);
            if (contains(sets.R[i], group[t])) slots.emplace_back(t, true);
        }
        const std::size_t count = saturating_pow(d, slots.size());
        if (count > kDefaultSpanCap) throw resource_error("theorem1_protocol: alphabet exceeds the enumeration cap");
        std::vector<LocalEncoding> list;
        list.reserve(count);
        std::vector<std::int64_t> digits(slots.size(), 0);
        for (std::size_t e = 0; e < count; ++e) {
            LocalEncoding enc(group.size(), {0, 0});
            for (std::size_t s = 0; s < slots.size(); ++s) {
                auto& pair = enc[slots[s].first];
                (slots[s].second ? pair.second : pair.first) = digits[s];
            }
            list.push_back(std::move(enc));
            for (std::size_t s = slots.size(); s-- > 0;) {
                if (++digits[s] < d) break;
                digits[s] = 0;
            }
        }
        encodings.push_back(std::move(list));
    }
    Protocol proto(d, p, std::move(encodings));
    proto.compute_labels(m);
    if (!verify_protocol(proto)) throw std::logic_error("theorem1_protocol: labels collide");
    return proto;
}

namespace {

struct SenderChoice {
    unsigned r_mask;
    unsigned q_mask;
    std::size_t size;
};

struct Theorem1Search {
    const CheckMatrix& m;
    const Partition& p;
    std::vector<std::vector<SenderChoice>> choices;
    std::vector<std::size_t> min_size, max_size;
    std::vector<const SenderChoice*> picked;
    std::vector<ModVec> vectors;

    bool dfs(std::size_t i, std::size_t remaining) {
        if (i == choices.size()) return remaining == 0;
        std::size_t rest_min = 0, rest_max = 0;
        for (std::size_t k = i + 1; k < choices.size(); ++k) {
            rest_min += min_size[k];
            rest_max += max_size[k];
        }
        for (const auto& c : choices[i]) {
            if (c.size > remaining || remaining - c.size < rest_min || remaining - c.size > rest_max) continue;
            const std::size_t mark = vectors.size();
            const auto& group = p.senders[i];
            for (std::size_t t = 0; t < group.size(); ++t) {
                if (c.r_mask >> t & 1u) vectors.push_back(m.alpha(group[t]));
            }
            for (std::size_t t = 0; t < group.size(); ++t) {
                if (c.q_mask >> t & 1u) vectors.push_back(m.beta(group[t]));
            }
            if (linear_independent(vectors)) {
                picked[i] = &c;
                if (dfs(i + 1, remaining - c.size)) return true;
            }
            vectors.erase(vectors.begin() + static_cast<std::ptrdiff_t>(mark), vectors.end());
        }
        return false;
    }
};

}  // namespace

std::optional<Theorem1Result> synth_theorem1(const CheckMatrix& m, const Partition& p) {
    require_square(m, p, "synth_theorem1");
    const std::size_t n = m.num_qudits();
    Theorem1Search search{m, p, {}, {}, {}, std::vector<const SenderChoice*>(p.num_senders()), {}};
    std::size_t base = 0;
    for (const auto& group : p.senders) {
        const std::size_t t = group.size();
        if (t >= 16) throw resource_error("synth_theorem1: sender group too large to search");
        std::vector<SenderChoice> list;
        for (unsigned r = 0; r < (1u << t); ++r) {
            for (unsigned q = 0; q < (1u << t); ++q) {
                const auto size = static_cast<std::size_t>(std::popcount(r) + std::popcount(q));
                if (size >= t) list.push_back({r, q, size});
            }
        }
        search.min_size.push_back(t);
        search.max_size.push_back(2 * t);
        search.choices.push_back(std::move(list));
        base += t;
    }
    // At most n columns of Z_d^n are independent.
    for (std::size_t total = n; total > base; --total) {
        search.vectors.clear();
        if (!search.dfs(0, total)) continue;
        RQSets sets;
        for (std::size_t i = 0; i < p.num_senders(); ++i) {
            const auto& group = p.senders[i];
            std::vector<std::size_t> R, Q;
            for (std::size_t t = 0; t < group.size(); ++t) {
                if (search.picked[i]->r_mask >> t & 1u) R.push_back(group[t]);
                if (search.picked[i]->q_mask >> t & 1u) Q.push_back(group[t]);
            }
            sets.R.push_back(std::move(R));
            sets.Q.push_back(std::move(Q));
        }
        Protocol proto = theorem1_protocol(m, p, sets);
        return Theorem1Result{std::move(sets), std::move(proto)};
    }
    return std::nullopt;
}

// ----------------------------------------------------------------- theorem 2

std::vector<std::vector<std::int64_t>> enumerate_A(const std::vector<std::size_t>& P, std::int64_t t,
                                                   std::size_t m) {
    if (t < 1) throw usage_error("enumerate_A: t must be at least 1");
    for (auto i : P) {
        if (i >= m) throw usage_error("enumerate_A: index out of range");
    }
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> cur(m, 1);
    auto rec = [&](auto&& self, std::size_t i, std::int64_t budget) -> void {
        if (i == m) {
            out.push_back(cur);
            return;
        }
        const std::int64_t top = contains(P, i) ? budget : 1;
        for (std::int64_t v = 1; v <= top; ++v) {
            cur[i] = v;
            self(self, i + 1, budget / v);
        }
        cur[i] = 1;
    };
    rec(rec, 0, t);
    return out;
}

namespace {

struct Candidate {
    ModVec vector;
    ModVec witness;
    std::int64_t c;
};

bool is_member_of_A(const std::vector<std::int64_t>& a, const std::vector<std::size_t>& P, std::int64_t d,
                    std::size_t m) {
    if (a.size() != m) return false;
    std::int64_t product = 1;
    for (std::size_t i = 0; i < m; ++i) {
        if (a[i] < 1) return false;
        if (!contains(P, i) && a[i] != 1) return false;
        if (a[i] > d / product) return false;
        product *= a[i];
    }
    return true;
}

std::int64_t prefix_product(const std::vector<std::int64_t>& a, std::size_t i, std::int64_t d) {
    std::int64_t out = 1;
    for (std::size_t t = 0; t < i; ++t) out = mod(out * a[t], d);
    return out;
}

LocalEncoding witness_to_local(const ModVec& witness, std::int64_t scale, std::size_t group_size) {
    // Gamma(sigma_{a,b} on l) = a beta_l - b alpha_l.
    LocalEncoding out(group_size);
    for (std::size_t t = 0; t < group_size; ++t) {
        out[t] = {scale * witness[2 * t + 1], -scale * witness[2 * t]};
    }
    return out;
}

}  // namespace

Theorem2Result theorem2_pipeline(const CheckMatrix& m, const Partition& p, const RingBasis& basis,
                                 const Theorem2Choices& choices, std::size_t cap) {
    require_square(m, p, "theorem2_pipeline");
    const std::int64_t d = m.modulus();
    const std::size_t n = m.num_qudits();
    const std::size_t senders = p.num_senders();
    if (basis.modulus() != d || basis.size() != n) throw usage_error("theorem2_pipeline: basis does not match the matrix");
    for (const auto& [key, v] : choices.z) {
        if (key.first >= senders || key.second >= n) throw usage_error("theorem2_pipeline: z choice index out of range");
        if (v.modulus() != d || v.size() != n) throw usage_error("theorem2_pipeline: z choice has the wrong length");
    }
    for (const auto& [level, a] : choices.a) {
        if (level >= n) throw usage_error("theorem2_pipeline: a choice level out of range");
    }

    // candidates[i][j]: elements of S_i in W_j - W_{j+1}, i.e. the first nonzero
    // basis coordinate is j; kept in first-witness order.
    const auto subspaces = sender_subspaces(m, p);
    std::vector<std::vector<std::vector<Candidate>>> candidates(senders, std::vector<std::vector<Candidate>>(n));
    for (std::size_t i = 0; i < senders; ++i) {
        for (auto& element : enumerate_span_with_witnesses(subspaces[i].span, cap)) {
            const ModVec coords = coordinates_in_basis(element.vector, basis);
            for (std::size_t j = 0; j < n; ++j) {
                if (coords[j] == 0) continue;
                candidates[i][j].push_back({element.vector, element.coefficients, coords[j]});
                break;
            }
        }
    }

    Theorem2Trace trace{basis, {}, {}};
    // word_parts[i][j]: local word with label y_ij; b_parts[i][j] = b_ji.
    std::vector<std::vector<LocalEncoding>> word_parts(senders);
    std::vector<std::vector<std::int64_t>> b_parts(senders, std::vector<std::int64_t>(n, 1));
    for (std::size_t i = 0; i < senders; ++i) {
        word_parts[i].assign(n, LocalEncoding(p.senders[i].size(), {0, 0}));
    }

    for (std::size_t j = 0; j < n; ++j) {
        Theorem2Level level;
        for (std::size_t i = 0; i < senders; ++i) {
            if (!candidates[i][j].empty()) level.P.push_back(i);
        }
        for (const auto& [key, v] : choices.z) {
            if (key.second == j && !contains(level.P, key.first)) {
                throw usage_error("theorem2_pipeline: sender " + std::to_string(key.first + 1) +
                                  " has no subspace element at level " + std::to_string(j + 1));
            }
        }

        for (auto i : level.P) {
            const auto& list = candidates[i][j];
            const Candidate* pick = nullptr;
            if (auto it = choices.z.find({i, j}); it != choices.z.end()) {
                for (const auto& c : list) {
                    if (c.vector == it->second) pick = &c;
                }
                if (!pick) {
                    throw usage_error("theorem2_pipeline: z choice " + it->second.str() + " for sender " +
                                      std::to_string(i + 1) + " is not in S_i at level " + std::to_string(j + 1));
                }
            } else {
                for (const auto& c : list) {
                    if (std::gcd(c.c, d) == 1) {
                        pick = &c;
                        break;
                    }
                }
                if (!pick) {
                    pick = &list.front();
                    trace.notes.push_back("sender " + std::to_string(i + 1) + ", level " + std::to_string(j + 1) +
                                          ": no unit coefficient available, c = " + std::to_string(pick->c));
                }
            }
            level.entries.push_back({i, pick->vector, pick->witness, pick->c, std::nullopt, ModVec(d, n)});
        }

        if (auto it = choices.a.find(j); it != choices.a.end()) {
            if (!is_member_of_A(it->second, level.P, d, senders)) {
                throw usage_error("theorem2_pipeline: a choice for level " + std::to_string(j + 1) +
                                  " is not in A(P_j; d)");
            }
            level.a = it->second;
        } else {
            level.a.assign(senders, 1);
            if (!level.P.empty()) level.a[level.P.front()] = d;
        }

        level.b.assign(senders, 1);
        for (auto& e : level.entries) {
            e.eta = solve_congruence(e.c, prefix_product(level.a, e.sender, d), d);
            if (!e.eta) continue;
            level.Q.push_back(e.sender);
            level.b[e.sender] = level.a[e.sender];
            e.y = *e.eta * e.z;
            b_parts[e.sender][j] = level.a[e.sender];
            word_parts[e.sender][j] = witness_to_local(e.witness, *e.eta, p.senders[e.sender].size());
        }
        trace.levels.push_back(std::move(level));
    }

    // gamma(i; lambda) = sum_j lambda_j y_ij with 1 <= lambda_j <= b_ji.
    std::vector<std::vector<LocalEncoding>> encodings(senders);
    for (std::size_t i = 0; i < senders; ++i) {
        std::size_t count = 1;
        for (auto b : b_parts[i]) count = saturating_mul(count, static_cast<std::size_t>(b));
        if (count > cap) throw resource_error("theorem2_pipeline: alphabet exceeds cap");
        std::vector<std::int64_t> lambda(n, 1);
        for (std::size_t e = 0; e < count; ++e) {
            LocalEncoding enc(p.senders[i].size(), {0, 0});
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t t = 0; t < enc.size(); ++t) {
                    enc[t].first = mod(enc[t].first + lambda[j] * word_parts[i][j][t].first, d);
                    enc[t].second = mod(enc[t].second + lambda[j] * word_parts[i][j][t].second, d);
                }
            }
            encodings[i].push_back(std::move(enc));
            for (std::size_t j = n; j-- > 0;) {
                if (++lambda[j] <= b_parts[i][j]) break;
                lambda[j] = 1;
            }
        }
    }

    Protocol proto(d, p, std::move(encodings));
    proto.compute_labels(m);
    check_theorem2_trace(trace, m, p);
    if (!verify_protocol(proto)) throw std::logic_error("theorem2_pipeline: labels collide");
    const auto alphabet = proto.alphabet();
    if (!check_bounds(alphabet, d, p).ok()) throw std::logic_error("theorem2_pipeline: alphabet violates the bounds");
    return Theorem2Result{std::move(trace), std::move(proto)};
}

void check_theorem2_trace(const Theorem2Trace& trace, const CheckMatrix& m, const Partition& p) {
    const std::int64_t d = m.modulus();
    const std::size_t n = m.num_qudits();
    const std::size_t senders = p.num_senders();
    auto fail = [](std::size_t j, const std::string& what) {
        throw std::logic_error("theorem2 trace, level " + std::to_string(j + 1) + ": " + what);
    };
    if (trace.levels.size() != n) throw std::logic_error("theorem2 trace: expected one level per basis vector");
    const auto subspaces = sender_subspaces(m, p);
    for (std::size_t j = 0; j < n; ++j) {
        const auto& level = trace.levels[j];
        if (level.entries.size() != level.P.size()) fail(j, "one entry per member of P_j expected");
        if (!is_member_of_A(level.a, level.P, d, senders)) fail(j, "a_j is not in A(P_j; d)");
        if (level.b.size() != senders) fail(j, "b_j has the wrong length");
        for (auto q : level.Q) {
            if (!contains(level.P, q)) fail(j, "Q_j is not contained in P_j");
        }
        for (std::size_t i = 0; i < senders; ++i) {
            if (level.b[i] != (contains(level.Q, i) ? level.a[i] : 1)) fail(j, "b_j differs from F(a_j; Q_j)");
        }
        for (std::size_t k = 0; k < level.entries.size(); ++k) {
            const auto& e = level.entries[k];
            if (e.sender != level.P[k]) fail(j, "entries out of order");
            if (subspaces[e.sender].span.combine(e.witness) != e.z) fail(j, "z is not reproduced by its witness");
            const ModVec coords = coordinates_in_basis(e.z, trace.basis);
            for (std::size_t t = 0; t < j; ++t) {
                if (coords[t] != 0) fail(j, "z has a nonzero coordinate below its level");
            }
            if (coords[j] == 0 || coords[j] != e.c) fail(j, "c does not match the coordinate of z");
            const std::int64_t rhs = prefix_product(level.a, e.sender, d);
            const bool in_q = contains(level.Q, e.sender);
            if (in_q != e.eta.has_value()) fail(j, "eta present exactly for members of Q_j");
            if (in_q) {
                if (mod(*e.eta * e.c - rhs, d) != 0) fail(j, "eta does not solve its congruence");
                if (e.y != *e.eta * e.z) fail(j, "y differs from eta z");
            } else {
                if (solve_congruence(e.c, rhs, d)) fail(j, "solvable congruence left out of Q_j");
                if (!e.y.is_zero()) fail(j, "y must vanish outside Q_j");
            }
        }
    }
}

}  // namespace qdense

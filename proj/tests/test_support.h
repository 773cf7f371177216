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

#ifndef QDENSE_TESTS_TEST_SUPPORT_H
#define QDENSE_TESTS_TEST_SUPPORT_H

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "qdense/densecode.h"
#include "qdense/io.h"
#include "qdense/pauli.h"
#include "qdense/stabilizer.h"

namespace qdense::testing {

inline std::string fixture_path(const std::string& name) { return std::string(QDENSE_DATA_DIR) + "/" + name; }

inline CheckMatrix load_stabilizer(const std::string& name) { return parse_stabilizer(read_file(fixture_path(name))); }

inline IntMatrix int_matrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    IntMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& r : rows) {
        Eigen::Index j = 0;
        for (auto v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

inline CheckMatrix bell(std::int64_t d) { return CheckMatrix(d, 2, int_matrix({{1, 1, 0, 0}, {0, 0, 1, -1}})); }

inline CheckMatrix ghz(std::int64_t d, std::size_t n) {
    IntMatrix rows = IntMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(2 * n));
    for (std::size_t k = 0; k < n; ++k) rows(0, static_cast<Eigen::Index>(k)) = 1;
    for (std::size_t j = 1; j < n; ++j) {
        rows(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(n + j - 1)) = 1;
        rows(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(n + j)) = -1;
    }
    return CheckMatrix(d, n, rows);
}

inline CheckMatrix five_qudit() { return load_stabilizer("five_qudit_d5.json"); }
inline CheckMatrix four_qudit() { return load_stabilizer("four_qudit_d7.json"); }

inline RingBasis four_qudit_basis() {
    return RingBasis({ModVec(7, {0, 0, 0, 1}), ModVec(7, {0, 0, 1, 0}), ModVec(7, {0, 1, 0, 0}), ModVec(7, {1, 0, 0, 0})});
}

inline Theorem2Choices four_qudit_choices() {
    Theorem2Choices c;
    c.z.emplace(std::pair<std::size_t, std::size_t>{0, 0}, ModVec(7, {3, 5, 3, 1}));
    c.z.emplace(std::pair<std::size_t, std::size_t>{0, 3}, ModVec(7, {1, 0, 0, 0}));
    c.z.emplace(std::pair<std::size_t, std::size_t>{1, 1}, ModVec(7, {2, 1, 1, 0}));
    c.z.emplace(std::pair<std::size_t, std::size_t>{1, 2}, ModVec(7, {2, 1, 0, 0}));
    c.z.emplace(std::pair<std::size_t, std::size_t>{2, 0}, ModVec(7, {0, 5, 2, 1}));
    c.z.emplace(std::pair<std::size_t, std::size_t>{2, 1}, ModVec(7, {5, 6, 1, 0}));
    c.a = {{0, {2, 1, 3}}, {1, {1, 2, 3}}, {2, {1, 7, 1}}, {3, {7, 1, 1}}};
    return c;
}

/// (alpha_1, beta_1, ..., beta_{n-1}) for the GHZ generators above.
inline RingBasis ghz_basis(const CheckMatrix& m) {
    std::vector<ModVec> v{m.alpha(0)};
    for (std::size_t j = 0; j + 1 < m.num_qudits(); ++j) v.push_back(m.beta(j));
    return RingBasis(std::move(v));
}

// ------------------------------------------------------------------ oracles

/// Definition-level independence: no nonzero coefficient tuple sums to zero.
inline bool brute_force_independent(const std::vector<ModVec>& vs) {
    if (vs.empty()) return true;
    const std::int64_t d = vs.front().modulus();
    const std::size_t k = vs.size();
    std::vector<std::int64_t> c(k, 0);
    while (true) {
        std::size_t t = k;
        while (t-- > 0) {
            if (++c[t] < d) break;
            c[t] = 0;
        }
        if (t == static_cast<std::size_t>(-1)) return true;
        ModVec sum(d, vs.front().size());
        for (std::size_t i = 0; i < k; ++i) sum += c[i] * vs[i];
        if (sum.is_zero()) return false;
    }
}

inline ModVec random_vec(std::int64_t d, std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::int64_t> u(0, d - 1);
    ModVec v(d, n);
    for (std::size_t i = 0; i < n; ++i) v.set(i, u(rng));
    return v;
}

inline PauliWord random_word(std::int64_t d, std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::int64_t> phase(0, 2 * d - 1);
    return PauliWord(phase(rng), random_vec(d, n, rng), random_vec(d, n, rng));
}

// ---------------------------------------------------------- random stabilizers

/// Smallest gamma phase that puts the word in G'.
inline PauliWord with_g_prime_phase(const PauliWord& g) {
    for (std::int64_t p = 0; p < 2 * g.modulus(); ++p) {
        PauliWord h = g.with_phase(p);
        if (in_G_prime(h)) return h;
    }
    return g;
}

struct RandomStabilizerOptions {
    /// Probability of each graph edge.
    double edge_probability = 0.6;
    /// Apply a random SL(2, Z_d) map on every qudit.
    bool local_symplectic = true;
    std::size_t row_operations = 12;
};

/// A complete stabilizer: a weighted graph state under random local symplectic
/// maps, with G' phases, then random row mixing (phases tracked exactly) and
/// a random qudit relabeling.
inline CheckMatrix random_complete_stabilizer(std::int64_t d, std::size_t n, std::mt19937_64& rng,
                                              const RandomStabilizerOptions& opt = {}) {
    std::uniform_int_distribution<std::int64_t> value(0, d - 1);
    std::bernoulli_distribution edge(opt.edge_probability);
    IntMatrix adj = IntMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!edge(rng)) continue;
            std::int64_t w = 1 + value(rng) % (d - 1);
            adj(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = w;
            adj(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = w;
        }
    }
    // Rows X_i prod_j Z_j^{adj_ij}.
    std::vector<ModVec> xs, zs;
    for (std::size_t i = 0; i < n; ++i) {
        xs.push_back(ModVec::unit(d, n, i));
        zs.push_back(ModVec(d, IntVector(adj.row(static_cast<Eigen::Index>(i)).transpose())));
    }
    if (opt.local_symplectic) {
        for (std::size_t q = 0; q < n; ++q) {
            std::int64_t p, s, t, u;
            do {
                p = value(rng);
                s = value(rng);
                t = value(rng);
                u = value(rng);
            } while (mod(p * u - s * t, d) != 1);
            for (std::size_t i = 0; i < n; ++i) {
                const std::int64_t x = xs[i][q], z = zs[i][q];
                xs[i].set(q, p * x + s * z);
                zs[i].set(q, t * x + u * z);
            }
        }
    }
    std::vector<PauliWord> gens;
    for (std::size_t i = 0; i < n; ++i) gens.push_back(with_g_prime_phase(PauliWord(0, xs[i], zs[i])));

    std::uniform_int_distribution<std::size_t> row(0, n - 1);
    std::vector<std::int64_t> units;
    for (std::int64_t u = 1; u < d; ++u) {
        if (std::gcd(u, d) == 1) units.push_back(u);
    }
    std::uniform_int_distribution<std::size_t> unit_pick(0, units.size() - 1);
    for (std::size_t step = 0; step < opt.row_operations && n > 1; ++step) {
        const std::size_t i = row(rng), j = row(rng);
        switch (value(rng) % 3) {
            case 0:
                if (i != j) gens[i] = multiply(gens[i], power(gens[j], 1 + value(rng) % (d - 1)));
                break;
            case 1:
                gens[i] = power(gens[i], units[unit_pick(rng)]);
                break;
            default:
                std::swap(gens[i], gens[j]);
        }
    }

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (auto& g : gens) {
        ModVec x(d, n), z(d, n);
        for (std::size_t q = 0; q < n; ++q) {
            x.set(perm[q], g.x()[q]);
            z.set(perm[q], g.z()[q]);
        }
        g = PauliWord(g.phase(), std::move(x), std::move(z));
    }
    return CheckMatrix(gens);
}

/// Random partition into at most max_senders nonempty sender groups of at most
/// max_group qudits, with the rest (possibly nothing) going to the receiver.
inline Partition random_partition(std::size_t n, std::mt19937_64& rng, std::size_t max_group = 2) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::uniform_int_distribution<std::size_t> receiver_size(n > 1 ? 1 : 0, std::max<std::size_t>(1, n / 2));
    std::size_t keep = std::min(receiver_size(rng), n - 1);
    std::vector<std::size_t> receiver(order.end() - static_cast<std::ptrdiff_t>(keep), order.end());
    std::vector<std::vector<std::size_t>> senders;
    std::size_t i = 0;
    const std::size_t limit = n - keep;
    while (i < limit) {
        const std::size_t room = std::min(max_group, limit - i);
        std::uniform_int_distribution<std::size_t> size(1, room);
        const std::size_t s = size(rng);
        std::vector<std::size_t> group(order.begin() + static_cast<std::ptrdiff_t>(i),
                                       order.begin() + static_cast<std::ptrdiff_t>(i + s));
        std::sort(group.begin(), group.end());
        senders.push_back(std::move(group));
        i += s;
    }
    std::sort(receiver.begin(), receiver.end());
    return Partition(n, std::move(senders), std::move(receiver));
}

}  // namespace qdense::testing

#endif  // QDENSE_TESTS_TEST_SUPPORT_H

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

#include "qdense/simulator.h"

#include <cmath>
#include <numbers>
#include <random>

namespace qdense {

namespace {

std::vector<SparsePauli> generator_actions(const CheckMatrix& m, std::size_t cap) {
    std::vector<SparsePauli> out;
    for (std::size_t i = 0; i < m.num_generators(); ++i) out.emplace_back(m.generator(i), cap);
    return out;
}

// prod_i (1/d) sum_j g_i^j applied to v.
Eigen::VectorXcd project(const std::vector<SparsePauli>& actions, std::int64_t d, Eigen::VectorXcd v) {
    Eigen::VectorXcd term, next, sum;
    for (const auto& g : actions) {
        term = v;
        sum = v;
        for (std::int64_t j = 1; j < d; ++j) {
            g.apply_into(term, next);
            term.swap(next);
            sum += term;
        }
        v = sum / static_cast<double>(d);
    }
    return v;
}

std::vector<std::size_t> decode_message(std::size_t index, const std::vector<std::size_t>& alphabet) {
    std::vector<std::size_t> out(alphabet.size());
    for (std::size_t i = alphabet.size(); i-- > 0;) {
        out[i] = index % alphabet[i];
        index /= alphabet[i];
    }
    return out;
}

}  // namespace

StateVector build_state(const CheckMatrix& m, const BuildOptions& options) {
    const std::int64_t d = m.modulus();
    const std::size_t dim = saturating_pow(d, m.num_qudits());
    if (dim > options.cap) {
        throw resource_error("build_state: dimension " + std::to_string(dim) + " exceeds cap " +
                             std::to_string(options.cap));
    }
    const auto actions = generator_actions(m, options.cap);
    const auto size = static_cast<Eigen::Index>(dim);
    constexpr double kAnnihilated = 1e-6;

    StateVector s{d, m.num_qudits(), {}, options.tolerance};
    if (options.random_seed) {
        std::mt19937_64 rng(*options.random_seed);
        std::normal_distribution<double> normal;
        Eigen::VectorXcd seed(size);
        for (Eigen::Index k = 0; k < size; ++k) seed[k] = {normal(rng), normal(rng)};
        s.amplitudes = project(actions, d, seed);
    } else {
        for (Eigen::Index k = 0; k < size; ++k) {
            s.amplitudes = project(actions, d, Eigen::VectorXcd::Unit(size, k));
            if (s.amplitudes.norm() > kAnnihilated) break;
        }
    }
    const double norm = s.amplitudes.norm();
    if (norm <= kAnnihilated) throw std::logic_error("build_state: every seed vector was annihilated");
    s.amplitudes /= norm;

    // A unit-modulus global phase makes the result reproducible across seeds.
    // Magnitudes tie on the support, so take the first one within rounding of the maximum.
    const Eigen::VectorXd magnitude = s.amplitudes.cwiseAbs();
    const double top = magnitude.maxCoeff();
    Eigen::Index lead = 0;
    while (magnitude[lead] < top - kAnnihilated) ++lead;
    s.amplitudes *= std::conj(s.amplitudes[lead]) / std::abs(s.amplitudes[lead]);

    if (double r = stabilizer_residual(s, m); r > options.tolerance) {
        throw std::logic_error("build_state: generator residual " + std::to_string(r) + " above tolerance");
    }
    return s;
}

double stabilizer_residual(const StateVector& s, const CheckMatrix& m) {
    double worst = 0.0;
    for (std::size_t i = 0; i < m.num_generators(); ++i) {
        SparsePauli g(m.generator(i), s.dimension());
        worst = std::max(worst, (g.apply(s.amplitudes) - s.amplitudes).norm());
    }
    return worst;
}

StateVector apply_word(const StateVector& s, const PauliWord& g) {
    if (g.modulus() != s.d || g.num_qudits() != s.n) throw usage_error("apply_word: word and state differ in shape");
    StateVector out = s;
    out.amplitudes = SparsePauli(g, s.dimension()).apply(s.amplitudes);
    return out;
}

StateVector apply_encoding(const StateVector& s, const Protocol& proto, std::span<const std::size_t> message) {
    return apply_word(s, proto.message_word(message));
}

OrthogonalityReport orthogonality_check(const Protocol& proto, const CheckMatrix& m,
                                        const OrthogonalityOptions& options) {
    BuildOptions build;
    build.cap = options.dense_cap;
    build.tolerance = options.tolerance;
    const StateVector base = build_state(m, build);

    OrthogonalityReport report;
    report.worst_residual = stabilizer_residual(base, m);
    const auto alphabet = proto.alphabet();
    std::size_t states = 1;
    for (auto b : alphabet) {
        if (__builtin_mul_overflow(states, b, &states)) throw resource_error("orthogonality_check: too many messages");
    }
    report.states = states;

    auto encoded = [&](std::size_t index) {
        const auto message = decode_message(index, alphabet);
        return apply_encoding(base, proto, message).amplitudes;
    };

    if (options.sample_pairs) {
        report.mode = "sample";
        if (states >= 2) {
            std::mt19937_64 rng(options.seed);
            std::uniform_int_distribution<std::size_t> pick(0, states - 1);
            for (std::size_t k = 0; k < *options.sample_pairs; ++k) {
                std::size_t a = pick(rng), b = pick(rng);
                while (b == a) b = pick(rng);
                report.max_overlap = std::max(report.max_overlap, std::abs(encoded(a).dot(encoded(b))));
                ++report.pairs_checked;
            }
        }
    } else {
        report.mode = "full";
        const std::size_t pairs = states * (states - 1) / 2;
        if (pairs > options.pair_cap) {
            throw resource_error("orthogonality_check: " + std::to_string(pairs) + " pairs exceed cap " +
                                 std::to_string(options.pair_cap) + "; use sample mode");
        }
        Eigen::MatrixXcd psi(static_cast<Eigen::Index>(base.dimension()), static_cast<Eigen::Index>(states));
        for (std::size_t k = 0; k < states; ++k) psi.col(static_cast<Eigen::Index>(k)) = encoded(k);
        const Eigen::MatrixXcd gram = psi.adjoint() * psi;
        for (Eigen::Index a = 0; a < gram.rows(); ++a) {
            for (Eigen::Index b = a + 1; b < gram.cols(); ++b) {
                report.max_overlap = std::max(report.max_overlap, std::abs(gram(a, b)));
            }
        }
        report.pairs_checked = pairs;
    }
    report.pass = report.max_overlap < options.tolerance && report.worst_residual < options.tolerance;
    return report;
}

std::optional<GammaLabel> eigenlabel(const StateVector& s, const CheckMatrix& m, std::size_t cap) {
    if (s.dimension() > cap) throw resource_error("eigenlabel: dimension exceeds cap");
    const std::int64_t d = m.modulus();
    const double step = 2.0 * std::numbers::pi / static_cast<double>(d);
    GammaLabel out(d, m.num_generators());
    for (std::size_t i = 0; i < m.num_generators(); ++i) {
        const std::complex<double> e = s.amplitudes.dot(SparsePauli(m.generator(i), cap).apply(s.amplitudes));
        if (std::abs(std::abs(e) - 1.0) > s.tolerance) return std::nullopt;
        const double x = std::arg(e) / step;
        const double nearest = std::round(x);
        if (std::abs(x - nearest) * step > s.tolerance) return std::nullopt;
        out.set(i, static_cast<std::int64_t>(nearest));
    }
    return out;
}

}  // namespace qdense

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

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace qdense {

bool is_prime(std::int64_t d) {
    if (d < 2) return false;
    for (std::int64_t p = 2; p * p <= d; ++p) {
        if (d % p == 0) return false;
    }
    return true;
}

namespace {

struct ExtendedGcd {
    std::int64_t g;
    std::int64_t s;
    std::int64_t t;
};

// g = s*a + t*b with g = gcd(a, b) >= 0.
ExtendedGcd extended_gcd(std::int64_t a, std::int64_t b) {
    std::int64_t old_r = a, r = b;
    std::int64_t old_s = 1, s = 0;
    std::int64_t old_t = 0, t = 1;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

void check_modulus(std::int64_t d) {
    if (d < 2) {
        throw usage_error("modulus must be at least 2, got " + std::to_string(d));
    }
}

}  // namespace

std::optional<std::int64_t> inverse_mod(std::int64_t a, std::int64_t d) {
    auto e = extended_gcd(mod(a, d), d);
    if (e.g != 1) return std::nullopt;
    return mod(e.s, d);
}

std::optional<std::int64_t> solve_congruence(std::int64_t a, std::int64_t b, std::int64_t d) {
    a = mod(a, d);
    b = mod(b, d);
    std::int64_t g = std::gcd(a, d);
    if (b % g != 0) return std::nullopt;
    std::int64_t reduced = d / g;
    if (reduced == 1) return 0;
    auto inv = inverse_mod(a / g, reduced);
    return mod((b / g) * *inv, reduced);
}

std::size_t saturating_pow(std::int64_t d, std::size_t k) {
    std::size_t out = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (__builtin_mul_overflow(out, static_cast<std::size_t>(d), &out)) {
            return std::numeric_limits<std::size_t>::max();
        }
    }
    return out;
}

// ------------------------------------------------------------------ ModVec

ModVec::ModVec(std::int64_t modulus, std::size_t length)
    : modulus_(modulus), entries_(IntVector::Zero(static_cast<Eigen::Index>(length))) {
    check_modulus(modulus);
}

ModVec::ModVec(std::int64_t modulus, const IntVector& entries) : modulus_(modulus), entries_(entries) {
    check_modulus(modulus);
    for (auto& e : entries_) e = mod(e, modulus_);
}

ModVec::ModVec(std::int64_t modulus, std::initializer_list<std::int64_t> entries)
    : ModVec(modulus, std::span<const std::int64_t>(entries.begin(), entries.size())) {}

ModVec::ModVec(std::int64_t modulus, std::span<const std::int64_t> entries)
    : modulus_(modulus), entries_(static_cast<Eigen::Index>(entries.size())) {
    check_modulus(modulus);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        entries_[static_cast<Eigen::Index>(i)] = mod(entries[i], modulus_);
    }
}

ModVec ModVec::unit(std::int64_t modulus, std::size_t length, std::size_t index) {
    ModVec v(modulus, length);
    v.set(index, 1);
    return v;
}

void ModVec::set(std::size_t i, std::int64_t value) {
    entries_[static_cast<Eigen::Index>(i)] = mod(value, modulus_);
}

std::vector<std::int64_t> ModVec::to_vector() const {
    return {entries_.data(), entries_.data() + entries_.size()};
}

bool ModVec::is_zero() const { return (entries_.array() == 0).all(); }

void ModVec::check_compatible(const ModVec& other) const {
    if (modulus_ != other.modulus_ || entries_.size() != other.entries_.size()) {
        throw usage_error("ModVec: mismatched modulus or length");
    }
}

ModVec& ModVec::operator+=(const ModVec& other) {
    check_compatible(other);
    for (Eigen::Index i = 0; i < entries_.size(); ++i) {
        entries_[i] = mod(entries_[i] + other.entries_[i], modulus_);
    }
    return *this;
}

ModVec& ModVec::operator-=(const ModVec& other) {
    check_compatible(other);
    for (Eigen::Index i = 0; i < entries_.size(); ++i) {
        entries_[i] = mod(entries_[i] - other.entries_[i], modulus_);
    }
    return *this;
}

ModVec ModVec::operator-() const {
    ModVec out = *this;
    for (auto& e : out.entries_) e = mod(-e, modulus_);
    return out;
}

ModVec operator*(std::int64_t c, const ModVec& v) {
    ModVec out = v;
    c = mod(c, v.modulus_);
    for (auto& e : out.entries_) e = mod(c * e, v.modulus_);
    return out;
}

bool operator==(const ModVec& a, const ModVec& b) {
    return a.modulus_ == b.modulus_ && a.entries_.size() == b.entries_.size() && a.entries_ == b.entries_;
}

std::strong_ordering operator<=>(const ModVec& a, const ModVec& b) {
    if (auto c = a.modulus_ <=> b.modulus_; c != 0) return c;
    if (auto c = a.entries_.size() <=> b.entries_.size(); c != 0) return c;
    for (Eigen::Index i = 0; i < a.entries_.size(); ++i) {
        if (auto c = a.entries_[i] <=> b.entries_[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

std::string ModVec::str() const {
    std::ostringstream out;
    out << '(';
    for (Eigen::Index i = 0; i < entries_.size(); ++i) {
        if (i) out << ',';
        out << entries_[i];
    }
    out << ')';
    return out.str();
}

std::size_t ModVecHash::operator()(const ModVec& v) const noexcept {
    std::size_t h = static_cast<std::size_t>(v.modulus()) * 0x9E3779B97F4A7C15ull;
    for (std::size_t i = 0; i < v.size(); ++i) {
        h ^= static_cast<std::size_t>(v[i]) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    }
    return h;
}

// ----------------------------------------------------------------- SpanSet

SpanSet::SpanSet(std::int64_t modulus, std::size_t length, std::vector<ModVec> generators)
    : modulus_(modulus), length_(length), generators_(std::move(generators)) {
    check_modulus(modulus);
    for (const auto& g : generators_) {
        if (g.modulus() != modulus_ || g.size() != length_) {
            throw usage_error("SpanSet: generator has wrong modulus or length");
        }
    }
}

ModVec SpanSet::combine(const ModVec& coefficients) const {
    if (coefficients.size() != generators_.size()) {
        throw usage_error("SpanSet::combine: coefficient count mismatch");
    }
    ModVec out(modulus_, length_);
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        if (coefficients[i] != 0) out += coefficients[i] * generators_[i];
    }
    return out;
}

IntMatrix SpanSet::matrix() const {
    IntMatrix m(static_cast<Eigen::Index>(length_), static_cast<Eigen::Index>(generators_.size()));
    for (std::size_t c = 0; c < generators_.size(); ++c) {
        m.col(static_cast<Eigen::Index>(c)) = generators_[c].entries();
    }
    return m;
}

// -------------------------------------------------------- diagonalization

ModDiagonalization diagonalize_mod(const IntMatrix& a, std::int64_t d) {
    check_modulus(d);
    const Eigen::Index rows = a.rows();
    const Eigen::Index cols = a.cols();
    IntMatrix w = a.unaryExpr([d](std::int64_t v) { return mod(v, d); });
    IntMatrix left = IntMatrix::Identity(rows, rows);
    IntMatrix right = IntMatrix::Identity(cols, cols);

    auto reduce_row = [d](IntMatrix& m, Eigen::Index r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = mod(m(r, c), d);
    };
    auto reduce_col = [d](IntMatrix& m, Eigen::Index c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, c) = mod(m(r, c), d);
    };
    // [row_t; row_i] <- [[s, u], [-b/g, a/g]] [row_t; row_i], determinant 1.
    auto mix_rows = [&](IntMatrix& m, Eigen::Index t, Eigen::Index i, std::int64_t s, std::int64_t u,
                        std::int64_t p, std::int64_t q) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            std::int64_t x = m(t, c), y = m(i, c);
            m(t, c) = mod(s * x + u * y, d);
            m(i, c) = mod(p * x + q * y, d);
        }
    };
    auto mix_cols = [&](IntMatrix& m, Eigen::Index t, Eigen::Index j, std::int64_t s, std::int64_t u,
                        std::int64_t p, std::int64_t q) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            std::int64_t x = m(r, t), y = m(r, j);
            m(r, t) = mod(s * x + u * y, d);
            m(r, j) = mod(p * x + q * y, d);
        }
    };

    const Eigen::Index steps = std::min(rows, cols);
    for (Eigen::Index t = 0; t < steps; ++t) {
        Eigen::Index pi = -1, pj = -1;
        for (Eigen::Index j = t; j < cols && pi < 0; ++j) {
            for (Eigen::Index i = t; i < rows; ++i) {
                if (w(i, j) != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
            }
        }
        if (pi < 0) break;
        w.row(t).swap(w.row(pi));
        left.row(t).swap(left.row(pi));
        w.col(t).swap(w.col(pj));
        right.col(t).swap(right.col(pj));

        bool clean = false;
        while (!clean) {
            clean = true;
            for (Eigen::Index i = t + 1; i < rows; ++i) {
                std::int64_t a_ = w(t, t), b_ = w(i, t);
                if (b_ == 0) continue;
                clean = false;
                if (b_ % a_ == 0) {
                    std::int64_t q = b_ / a_;
                    mix_rows(w, t, i, 1, 0, -q, 1);
                    mix_rows(left, t, i, 1, 0, -q, 1);
                } else {
                    auto e = extended_gcd(a_, b_);
                    mix_rows(w, t, i, e.s, e.t, -b_ / e.g, a_ / e.g);
                    mix_rows(left, t, i, e.s, e.t, -b_ / e.g, a_ / e.g);
                }
            }
            for (Eigen::Index j = t + 1; j < cols; ++j) {
                std::int64_t a_ = w(t, t), b_ = w(t, j);
                if (b_ == 0) continue;
                clean = false;
                if (b_ % a_ == 0) {
                    std::int64_t q = b_ / a_;
                    mix_cols(w, t, j, 1, 0, -q, 1);
                    mix_cols(right, t, j, 1, 0, -q, 1);
                } else {
                    auto e = extended_gcd(a_, b_);
                    mix_cols(w, t, j, e.s, e.t, -b_ / e.g, a_ / e.g);
                    mix_cols(right, t, j, e.s, e.t, -b_ / e.g, a_ / e.g);
                }
            }
        }
        reduce_row(w, t);
        reduce_col(w, t);
    }
    return {std::move(left), std::move(w), std::move(right)};
}

// -------------------------------------------------------------- operations

namespace {

bool kernel_scan_limit_ok(std::int64_t d, std::size_t k, std::size_t cap) {
    return saturating_pow(d, k) <= cap;
}

void check_uniform(std::span<const ModVec> vs) {
    for (const auto& v : vs) {
        if (v.modulus() != vs.front().modulus() || v.size() != vs.front().size()) {
            throw usage_error("linear_independent: mixed moduli or lengths");
        }
    }
}

bool independent_by_kernel_scan(std::span<const ModVec> vs) {
    const std::int64_t d = vs.front().modulus();
    const std::size_t k = vs.size();
    const std::size_t n = vs.front().size();
    std::vector<std::int64_t> coeff(k, 0);
    IntVector acc = IntVector::Zero(static_cast<Eigen::Index>(n));
    // Odometer over Z_d^k maintains the running combination incrementally.
    while (true) {
        std::size_t pos = 0;
        while (pos < k) {
            acc += vs[pos].entries();
            if (++coeff[pos] < d) break;
            acc -= d * vs[pos].entries();
            coeff[pos] = 0;
            ++pos;
        }
        if (pos == k) return true;
        bool zero = true;
        for (Eigen::Index i = 0; i < acc.size(); ++i) {
            if (mod(acc[i], d) != 0) {
                zero = false;
                break;
            }
        }
        if (zero) return false;
    }
}

bool independent_by_diagonal(std::span<const ModVec> vs) {
    const std::int64_t d = vs.front().modulus();
    const std::size_t n = vs.front().size();
    if (vs.size() > n) return false;
    SpanSet s(d, n, {vs.begin(), vs.end()});
    auto diag = diagonalize_mod(s.matrix(), d);
    for (Eigen::Index t = 0; t < static_cast<Eigen::Index>(vs.size()); ++t) {
        if (std::gcd(diag.diag(t, t), d) != 1) return false;
    }
    return true;
}

}  // namespace

bool linear_independent(std::span<const ModVec> vs, std::size_t cap) {
    if (vs.empty()) return true;
    check_uniform(vs);
    const std::int64_t d = vs.front().modulus();
    if (is_prime(d)) return independent_by_diagonal(vs);
    if (vs.size() > vs.front().size()) return false;
    if (kernel_scan_limit_ok(d, vs.size(), cap)) return independent_by_kernel_scan(vs);
    return independent_by_diagonal(vs);
}

std::optional<ModVec> span_membership(const ModVec& v, const SpanSet& s) {
    if (v.modulus() != s.modulus() || v.size() != s.length()) {
        throw usage_error("span_membership: vector incompatible with span");
    }
    const std::int64_t d = s.modulus();
    const std::size_t k = s.size();
    if (k == 0) {
        if (v.is_zero()) return ModVec(d, 0);
        return std::nullopt;
    }
    auto diag = diagonalize_mod(s.matrix(), d);
    IntVector w = diag.left * v.entries();
    IntVector mu = IntVector::Zero(static_cast<Eigen::Index>(k));
    for (Eigen::Index t = 0; t < w.size(); ++t) {
        std::int64_t rhs = mod(w[t], d);
        if (t >= static_cast<Eigen::Index>(k)) {
            if (rhs != 0) return std::nullopt;
            continue;
        }
        auto x = solve_congruence(diag.diag(t, t), rhs, d);
        if (!x) return std::nullopt;
        mu[t] = *x;
    }
    ModVec lambda(d, IntVector(diag.right * mu));
    if (s.combine(lambda) != v) {
        throw std::logic_error("span_membership: witness does not reproduce the vector");
    }
    return lambda;
}

std::size_t span_size(const SpanSet& s) {
    const std::int64_t d = s.modulus();
    if (s.size() == 0) return 1;
    auto diag = diagonalize_mod(s.matrix(), d);
    std::size_t out = 1;
    const Eigen::Index steps = std::min(diag.diag.rows(), diag.diag.cols());
    for (Eigen::Index t = 0; t < steps; ++t) {
        std::int64_t g = std::gcd(diag.diag(t, t), d);
        if (__builtin_mul_overflow(out, static_cast<std::size_t>(d / g), &out)) {
            return std::numeric_limits<std::size_t>::max();
        }
    }
    return out;
}

std::vector<SpanElement> enumerate_span_with_witnesses(const SpanSet& s, std::size_t cap) {
    const std::int64_t d = s.modulus();
    const std::size_t k = s.size();
    if (saturating_pow(d, k) > cap) {
        throw resource_error("enumerate_span: " + std::to_string(d) + "^" + std::to_string(k) +
                             " coefficient tuples exceed the cap of " + std::to_string(cap));
    }
    std::vector<SpanElement> out;
    std::unordered_map<ModVec, std::size_t, ModVecHash> seen;
    std::vector<std::int64_t> coeff(k, 0);
    // Lexicographic order with the first coefficient most significant.
    while (true) {
        ModVec c(d, std::span<const std::int64_t>(coeff));
        ModVec v = s.combine(c);
        if (seen.emplace(v, out.size()).second) out.push_back({std::move(v), std::move(c)});
        std::size_t pos = k;
        while (pos > 0) {
            if (++coeff[pos - 1] < d) break;
            coeff[pos - 1] = 0;
            --pos;
        }
        if (pos == 0) break;
    }
    return out;
}

std::vector<ModVec> enumerate_span(const SpanSet& s, std::size_t cap) {
    auto elements = enumerate_span_with_witnesses(s, cap);
    std::vector<ModVec> out;
    out.reserve(elements.size());
    for (auto& e : elements) out.push_back(std::move(e.vector));
    std::sort(out.begin(), out.end());
    return out;
}

// --------------------------------------------------------------- RingBasis

RingBasis::RingBasis(std::vector<ModVec> vectors) : vectors_(std::move(vectors)) {
    if (vectors_.empty()) throw usage_error("RingBasis: no vectors");
    modulus_ = vectors_.front().modulus();
    const std::size_t n = vectors_.size();
    for (const auto& v : vectors_) {
        if (v.modulus() != modulus_ || v.size() != n) {
            throw usage_error("RingBasis: needs n vectors of length n over one modulus");
        }
    }
    SpanSet s(modulus_, n, vectors_);
    auto diag = diagonalize_mod(s.matrix(), modulus_);
    IntMatrix dinv = IntMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index t = 0; t < static_cast<Eigen::Index>(n); ++t) {
        auto inv = inverse_mod(diag.diag(t, t), modulus_);
        if (!inv) throw usage_error("RingBasis: vectors are not linearly independent");
        dinv(t, t) = *inv;
    }
    // A = L^-1 D R^-1, so A^-1 = R D^-1 L.
    inverse_ = diag.right * dinv;
    inverse_ = inverse_.unaryExpr([this](std::int64_t v) { return mod(v, modulus_); });
    inverse_ = inverse_ * diag.left;
    inverse_ = inverse_.unaryExpr([this](std::int64_t v) { return mod(v, modulus_); });
}

RingBasis RingBasis::standard(std::int64_t modulus, std::size_t n) {
    std::vector<ModVec> vs;
    for (std::size_t j = 0; j < n; ++j) vs.push_back(ModVec::unit(modulus, n, j));
    return RingBasis(std::move(vs));
}

ModVec coordinates_in_basis(const ModVec& v, const RingBasis& basis) {
    if (v.modulus() != basis.modulus() || v.size() != basis.size()) {
        throw usage_error("coordinates_in_basis: vector incompatible with basis");
    }
    ModVec lambda(basis.modulus(), IntVector(basis.inverse() * v.entries()));
    ModVec back(basis.modulus(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) back += lambda[j] * basis[j];
    if (back != v) throw std::logic_error("coordinates_in_basis: basis inverse is inconsistent");
    return lambda;
}

std::int64_t coordinate(const ModVec& v, const RingBasis& basis, std::size_t j) {
    return coordinates_in_basis(v, basis)[j];
}

}  // namespace qdense

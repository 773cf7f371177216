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

#include "qdense/pauli.h"

#include <numbers>
#include <numeric>
#include <sstream>

namespace qdense {

std::complex<double> gamma_power(std::int64_t k, std::int64_t d) {
    k = mod(k, 2 * d);
    return std::polar(1.0, std::numbers::pi * static_cast<double>(k) / static_cast<double>(d));
}

SymplecticVec::SymplecticVec(ModVec entries) : entries_(std::move(entries)) {
    if (entries_.size() % 2 != 0) throw usage_error("SymplecticVec: odd length");
}

SymplecticVec::SymplecticVec(const ModVec& x, const ModVec& z) : entries_(x.modulus(), 2 * x.size()) {
    if (x.modulus() != z.modulus() || x.size() != z.size()) {
        throw usage_error("SymplecticVec: x and z parts disagree");
    }
    for (std::size_t k = 0; k < x.size(); ++k) {
        entries_.set(k, x[k]);
        entries_.set(x.size() + k, z[k]);
    }
}

PauliWord::PauliWord(std::int64_t d, std::size_t n) : phase_(0), x_(d, n), z_(d, n) {
    if (n == 0) throw usage_error("PauliWord: needs at least one qudit");
}

PauliWord::PauliWord(std::int64_t phase, ModVec x, ModVec z) : phase_(0), x_(std::move(x)), z_(std::move(z)) {
    if (x_.modulus() != z_.modulus() || x_.size() != z_.size() || x_.size() == 0) {
        throw usage_error("PauliWord: x and z parts disagree");
    }
    phase_ = mod(phase, 2 * x_.modulus());
}

PauliWord::PauliWord(std::int64_t d, std::int64_t phase,
                     const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs)
    : PauliWord(d, pairs.size()) {
    phase_ = mod(phase, 2 * d);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        x_.set(k, pairs[k].first);
        z_.set(k, pairs[k].second);
    }
}

PauliWord PauliWord::single(std::int64_t d, std::size_t n, std::size_t k, std::int64_t a, std::int64_t b) {
    PauliWord g(d, n);
    g.x_.set(k, a);
    g.z_.set(k, b);
    return g;
}

std::vector<std::pair<std::int64_t, std::int64_t>> PauliWord::pairs() const {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    out.reserve(num_qudits());
    for (std::size_t k = 0; k < num_qudits(); ++k) out.emplace_back(x_[k], z_[k]);
    return out;
}

PauliWord PauliWord::with_phase(std::int64_t phase) const { return PauliWord(phase, x_, z_); }

std::string PauliWord::str() const {
    std::ostringstream out;
    out << "g^" << phase_;
    for (std::size_t k = 0; k < num_qudits(); ++k) out << " (" << x_[k] << ',' << z_[k] << ')';
    return out.str();
}

SymplecticVec chi(const PauliWord& g) { return SymplecticVec(g.x(), g.z()); }

std::int64_t symplectic_product(const SymplecticVec& u, const SymplecticVec& v) {
    if (u.modulus() != v.modulus() || u.num_qudits() != v.num_qudits()) {
        throw usage_error("symplectic_product: length or modulus mismatch");
    }
    const std::int64_t d = u.modulus();
    std::int64_t acc = 0;
    for (std::size_t k = 0; k < u.num_qudits(); ++k) {
        acc = mod(acc + u.z(k) * v.x(k) - u.x(k) * v.z(k), d);
    }
    return acc;
}

namespace {

void check_same_shape(const PauliWord& g, const PauliWord& h) {
    if (g.modulus() != h.modulus() || g.num_qudits() != h.num_qudits()) {
        throw usage_error("Pauli words have different dimensions");
    }
}

}  // namespace

PauliWord multiply(const PauliWord& g, const PauliWord& h) {
    check_same_shape(g, h);
    const std::int64_t d = g.modulus();
    // X^a Z^b X^a' Z^b' = omega^{b a'} X^{a+a'} Z^{b+b'}
    std::int64_t phase = g.phase() + h.phase();
    for (std::size_t k = 0; k < g.num_qudits(); ++k) {
        phase = mod(phase + 2 * g.z()[k] * h.x()[k], 2 * d);
    }
    return PauliWord(phase, g.x() + h.x(), g.z() + h.z());
}

PauliWord inverse(const PauliWord& g) {
    const std::int64_t d = g.modulus();
    // (X^a Z^b)^-1 = Z^-b X^-a = omega^{ab} X^-a Z^-b
    std::int64_t phase = -g.phase();
    for (std::size_t k = 0; k < g.num_qudits(); ++k) {
        phase = mod(phase + 2 * g.x()[k] * g.z()[k], 2 * d);
    }
    return PauliWord(phase, -g.x(), -g.z());
}

PauliWord power(const PauliWord& g, std::int64_t k) {
    if (k < 0) throw usage_error("power: negative exponent");
    PauliWord result = PauliWord::identity(g.modulus(), g.num_qudits());
    PauliWord base = g;
    while (k > 0) {
        if (k & 1) result = multiply(result, base);
        base = multiply(base, base);
        k >>= 1;
    }
    return result;
}

bool commutes(const PauliWord& g, const PauliWord& h) {
    check_same_shape(g, h);
    return symplectic_product(chi(g), chi(h)) == 0;
}

std::int64_t scalar_order(const PauliWord& g) {
    const std::int64_t d = g.modulus();
    std::int64_t content = d;
    for (std::size_t k = 0; k < g.num_qudits(); ++k) {
        content = std::gcd(content, g.x()[k]);
        content = std::gcd(content, g.z()[k]);
    }
    return d / content;
}

bool in_G_prime(const PauliWord& g) { return power(g, scalar_order(g)).phase() == 0; }

Eigen::MatrixXcd dense_matrix(const PauliWord& g, std::size_t cap) {
    const std::int64_t d = g.modulus();
    const std::size_t n = g.num_qudits();
    const std::size_t dim = saturating_pow(d, n);
    if (dim > cap) {
        throw resource_error("dense_matrix: dimension " + std::to_string(dim) + " exceeds cap " +
                             std::to_string(cap));
    }
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    std::vector<std::int64_t> digits(n);
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t rest = col;
        for (std::size_t k = n; k-- > 0;) {
            digits[k] = static_cast<std::int64_t>(rest % static_cast<std::size_t>(d));
            rest /= static_cast<std::size_t>(d);
        }
        // X^a Z^b |j> = omega^{b j} |j + a>
        std::int64_t phase = g.phase();
        std::size_t row = 0;
        for (std::size_t k = 0; k < n; ++k) {
            phase += 2 * g.z()[k] * digits[k];
            row = row * static_cast<std::size_t>(d) + static_cast<std::size_t>(mod(digits[k] + g.x()[k], d));
        }
        m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = gamma_power(phase, d);
    }
    return m;
}

SparsePauli::SparsePauli(const PauliWord& g, std::size_t cap) {
    const std::int64_t d = g.modulus();
    const std::size_t n = g.num_qudits();
    const std::size_t dim = saturating_pow(d, n);
    if (dim > cap) {
        throw resource_error("state dimension " + std::to_string(dim) + " exceeds cap " + std::to_string(cap));
    }
    target_.resize(dim);
    factor_.resize(dim);
    std::vector<std::int64_t> digits(n, 0);
    for (std::size_t idx = 0; idx < dim; ++idx) {
        std::int64_t phase = g.phase();
        std::size_t row = 0;
        for (std::size_t k = 0; k < n; ++k) {
            phase += 2 * g.z()[k] * digits[k];
            row = row * static_cast<std::size_t>(d) + static_cast<std::size_t>(mod(digits[k] + g.x()[k], d));
        }
        target_[idx] = row;
        factor_[idx] = gamma_power(phase, d);
        for (std::size_t k = n; k-- > 0;) {
            if (++digits[k] < d) break;
            digits[k] = 0;
        }
    }
}

void SparsePauli::apply_into(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const {
    if (static_cast<std::size_t>(in.size()) != target_.size()) {
        throw usage_error("SparsePauli: vector has the wrong dimension");
    }
    out.resize(in.size());
    for (std::size_t i = 0; i < target_.size(); ++i) {
        out[static_cast<Eigen::Index>(target_[i])] = factor_[i] * in[static_cast<Eigen::Index>(i)];
    }
}

Eigen::VectorXcd SparsePauli::apply(const Eigen::VectorXcd& v) const {
    Eigen::VectorXcd out;
    apply_into(v, out);
    return out;
}

}  // namespace qdense

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

#ifndef QDENSE_PAULI_H
#define QDENSE_PAULI_H

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qdense/modring.h"

namespace qdense {

inline constexpr std::size_t kDefaultDenseCap = 4096;

/// gamma^k with gamma = exp(i pi / d), so gamma^2 is the d-th root of unity omega.
std::complex<double> gamma_power(std::int64_t k, std::int64_t d);

/// The (x | z) exponent row of a Pauli word; length 2n.
class SymplecticVec {
   public:
    explicit SymplecticVec(ModVec entries);
    SymplecticVec(const ModVec& x, const ModVec& z);

    std::size_t num_qudits() const { return entries_.size() / 2; }
    std::int64_t modulus() const { return entries_.modulus(); }
    const ModVec& entries() const { return entries_; }
    std::int64_t x(std::size_t k) const { return entries_[k]; }
    std::int64_t z(std::size_t k) const { return entries_[num_qudits() + k]; }

    friend bool operator==(const SymplecticVec&, const SymplecticVec&) = default;

   private:
    ModVec entries_;
};

/// gamma^phase * (X^{x_1} Z^{z_1}) (x) ... (x) (X^{x_n} Z^{z_n}).
///
/// The phase is kept in gamma units modulo 2d for every d. Per qudit the
/// factor order is X first, then Z, and every reordering goes through
/// Z^b X^a = omega^{ab} X^a Z^b.
class PauliWord {
   public:
    PauliWord(std::int64_t d, std::size_t n);
    PauliWord(std::int64_t phase, ModVec x, ModVec z);
    /// One (a, b) pair per qudit; negative exponents are reduced mod d.
    PauliWord(std::int64_t d, std::int64_t phase, const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs);

    static PauliWord identity(std::int64_t d, std::size_t n) { return PauliWord(d, n); }
    /// sigma_{a,b} on qudit k, identity elsewhere.
    static PauliWord single(std::int64_t d, std::size_t n, std::size_t k, std::int64_t a, std::int64_t b);

    std::int64_t modulus() const { return x_.modulus(); }
    std::size_t num_qudits() const { return x_.size(); }
    std::int64_t phase() const { return phase_; }
    const ModVec& x() const { return x_; }
    const ModVec& z() const { return z_; }
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs() const;

    bool is_identity() const { return phase_ == 0 && x_.is_zero() && z_.is_zero(); }
    PauliWord with_phase(std::int64_t phase) const;

    friend bool operator==(const PauliWord&, const PauliWord&) = default;

    /// "g^p (a,b) (a,b) ...", where g^p is the gamma power of the phase.
    std::string str() const;

   private:
    std::int64_t phase_;
    ModVec x_;
    ModVec z_;
};

SymplecticVec chi(const PauliWord& g);

/// u Lambda v^T mod d with Lambda = [[0, -I], [I, 0]]; g h = omega^{product} h g.
std::int64_t symplectic_product(const SymplecticVec& u, const SymplecticVec& v);

PauliWord multiply(const PauliWord& g, const PauliWord& h);
PauliWord inverse(const PauliWord& g);
/// g^k for k >= 0.
PauliWord power(const PauliWord& g, std::int64_t k);
bool commutes(const PauliWord& g, const PauliWord& h);

/// Smallest j >= 1 with g^j proportional to the identity.
std::int64_t scalar_order(const PauliWord& g);

/// True iff the spectrum of g is {1, omega^c, omega^{2c}, ...} for a factor c of d.
/// Decided by the phase of g^j for j = scalar_order(g): it must be zero.
bool in_G_prime(const PauliWord& g);

/// Dense unitary of size d^n. Qudit 0 is the most significant digit of the
/// basis index. Throws resource_error if d^n exceeds cap.
Eigen::MatrixXcd dense_matrix(const PauliWord& g, std::size_t cap = kDefaultDenseCap);

/// Action of a word on C^{d^n} as a basis permutation with per-index phases:
/// X^a Z^b |j> = omega^{b.j} |j + a>.
class SparsePauli {
   public:
    explicit SparsePauli(const PauliWord& g, std::size_t cap = kDefaultDenseCap);

    std::size_t dimension() const { return target_.size(); }
    Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
    /// out must not alias in.
    void apply_into(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const;

   private:
    std::vector<std::size_t> target_;
    std::vector<std::complex<double>> factor_;
};

}  // namespace qdense

#endif  // QDENSE_PAULI_H

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

#ifndef QDENSE_MODRING_H
#define QDENSE_MODRING_H

#include <Eigen/Dense>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdense {

using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Raised when an enumeration or simulation would exceed a configured size cap.
class resource_error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Caller supplied inconsistent or out-of-contract input.
class usage_error : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kDefaultSpanCap = 10'000'000;

/// Representative of v in [0, d).
constexpr std::int64_t mod(std::int64_t v, std::int64_t d) {
    std::int64_t r = v % d;
    return r < 0 ? r + d : r;
}

bool is_prime(std::int64_t d);

/// Multiplicative inverse of a modulo d, if a is a unit.
std::optional<std::int64_t> inverse_mod(std::int64_t a, std::int64_t d);

/// Smallest non-negative x with a*x = b (mod d), if one exists.
std::optional<std::int64_t> solve_congruence(std::int64_t a, std::int64_t b, std::int64_t d);

/// d^k, saturating at SIZE_MAX.
std::size_t saturating_pow(std::int64_t d, std::size_t k);

/// A vector over Z_d. Entries are reduced into [0, d) on every write.
class ModVec {
   public:
    ModVec(std::int64_t modulus, std::size_t length);
    ModVec(std::int64_t modulus, const IntVector& entries);
    ModVec(std::int64_t modulus, std::initializer_list<std::int64_t> entries);
    ModVec(std::int64_t modulus, std::span<const std::int64_t> entries);

    static ModVec unit(std::int64_t modulus, std::size_t length, std::size_t index);

    std::int64_t modulus() const { return modulus_; }
    std::size_t size() const { return static_cast<std::size_t>(entries_.size()); }
    std::int64_t operator[](std::size_t i) const { return entries_[static_cast<Eigen::Index>(i)]; }
    void set(std::size_t i, std::int64_t value);
    const IntVector& entries() const { return entries_; }
    std::vector<std::int64_t> to_vector() const;
    bool is_zero() const;

    ModVec& operator+=(const ModVec& other);
    ModVec& operator-=(const ModVec& other);
    ModVec operator-() const;
    friend ModVec operator+(ModVec a, const ModVec& b) { return a += b; }
    friend ModVec operator-(ModVec a, const ModVec& b) { return a -= b; }
    friend ModVec operator*(std::int64_t c, const ModVec& v);

    friend bool operator==(const ModVec& a, const ModVec& b);
    friend std::strong_ordering operator<=>(const ModVec& a, const ModVec& b);

    std::string str() const;

   private:
    void check_compatible(const ModVec& other) const;

    std::int64_t modulus_;
    IntVector entries_;
};

struct ModVecHash {
    std::size_t operator()(const ModVec& v) const noexcept;
};

/// Generators of a Z_d-submodule of Z_d^length. No generators means the zero span.
class SpanSet {
   public:
    SpanSet(std::int64_t modulus, std::size_t length, std::vector<ModVec> generators);

    std::int64_t modulus() const { return modulus_; }
    std::size_t length() const { return length_; }
    std::size_t size() const { return generators_.size(); }
    const std::vector<ModVec>& generators() const { return generators_; }

    /// Sum of coefficients[i] * generators[i].
    ModVec combine(const ModVec& coefficients) const;
    /// Columns are the generators.
    IntMatrix matrix() const;

   private:
    std::int64_t modulus_;
    std::size_t length_;
    std::vector<ModVec> generators_;
};

/// n linearly independent vectors of Z_d^n, with a cached inverse for coordinate solves.
class RingBasis {
   public:
    explicit RingBasis(std::vector<ModVec> vectors);
    static RingBasis standard(std::int64_t modulus, std::size_t n);

    std::int64_t modulus() const { return modulus_; }
    std::size_t size() const { return vectors_.size(); }
    const ModVec& operator[](std::size_t j) const { return vectors_[j]; }
    const std::vector<ModVec>& vectors() const { return vectors_; }
    /// inverse() * v gives the coordinates of v.
    const IntMatrix& inverse() const { return inverse_; }

   private:
    std::int64_t modulus_;
    std::vector<ModVec> vectors_;
    IntMatrix inverse_;
};

/// left * A * right = diag (mod d), with left and right invertible over Z_d.
/// The diagonal is not normalized into a divisibility chain.
struct ModDiagonalization {
    IntMatrix left;
    IntMatrix diag;
    IntMatrix right;
};

ModDiagonalization diagonalize_mod(const IntMatrix& a, std::int64_t d);

/// Ring-sense independence: only the all-zero combination vanishes.
bool linear_independent(std::span<const ModVec> vs, std::size_t cap = kDefaultSpanCap);

/// Coefficients lambda with sum lambda_i g_i = v, or nullopt when v is outside the span.
std::optional<ModVec> span_membership(const ModVec& v, const SpanSet& s);

/// Number of distinct elements of the span.
std::size_t span_size(const SpanSet& s);

/// Sorted, deduplicated elements. Throws resource_error if d^|generators| > cap.
std::vector<ModVec> enumerate_span(const SpanSet& s, std::size_t cap = kDefaultSpanCap);

struct SpanElement {
    ModVec vector;
    /// First coefficient tuple, in lexicographic order, that produces `vector`.
    ModVec coefficients;
};

/// Like enumerate_span, but also keeps the lexicographically first witness per element.
/// Elements are listed in order of their first witness.
std::vector<SpanElement> enumerate_span_with_witnesses(const SpanSet& s,
                                                       std::size_t cap = kDefaultSpanCap);

/// The unique lambda with v = sum lambda_j x_j.
ModVec coordinates_in_basis(const ModVec& v, const RingBasis& basis);

/// C_j(v; X), 0-based j.
std::int64_t coordinate(const ModVec& v, const RingBasis& basis, std::size_t j);

template <typename Scalar>
struct SmithDecomposition {
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    Matrix U;
    Matrix D;
    Matrix V;
};

/// U * M * V = D over the integers, D diagonal with d_i | d_{i+1} and d_i >= 0,
/// U and V unimodular. Throws std::overflow_error on coefficient overflow.
template <typename Scalar>
SmithDecomposition<Scalar> smith_normal_form(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m);

}  // namespace qdense

#include "qdense/smith.inl"

#endif  // QDENSE_MODRING_H

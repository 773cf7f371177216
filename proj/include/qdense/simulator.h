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

#ifndef QDENSE_SIMULATOR_H
#define QDENSE_SIMULATOR_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "qdense/densecode.h"
#include "qdense/pauli.h"
#include "qdense/stabilizer.h"

namespace qdense {

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr std::size_t kDefaultPairCap = 10'000;

struct StateVector {
    std::int64_t d = 2;
    std::size_t n = 0;
    Eigen::VectorXcd amplitudes;
    double tolerance = kDefaultTolerance;

    std::size_t dimension() const { return static_cast<std::size_t>(amplitudes.size()); }
};

struct BuildOptions {
    std::size_t cap = kDefaultDenseCap;
    /// Use a random seed vector instead of basis states 0, 1, ...
    std::optional<std::uint64_t> random_seed;
    double tolerance = kDefaultTolerance;
};

/// The state fixed by every generator, obtained by projecting a seed vector.
/// Throws std::logic_error if every seed is annihilated or a generator moves
/// the result by more than the tolerance.
StateVector build_state(const CheckMatrix& m, const BuildOptions& options = {});

/// max_i || g_i s - s ||.
double stabilizer_residual(const StateVector& s, const CheckMatrix& m);

StateVector apply_word(const StateVector& s, const PauliWord& g);

/// Applies one encoding per sender; message indices are 0-based.
StateVector apply_encoding(const StateVector& s, const Protocol& proto, std::span<const std::size_t> message);

struct OrthogonalityOptions {
    /// Number of random pairs; unset means every pair.
    std::optional<std::size_t> sample_pairs;
    std::uint64_t seed = 0;
    std::size_t dense_cap = kDefaultDenseCap;
    std::size_t pair_cap = kDefaultPairCap;
    double tolerance = kDefaultTolerance;
};

struct OrthogonalityReport {
    bool pass = false;
    std::string mode;
    std::size_t states = 0;
    std::size_t pairs_checked = 0;
    double max_overlap = 0.0;
    double worst_residual = 0.0;
};

/// Encodes messages on the state of m and checks |<psi(j)|psi(j')>| < tolerance
/// for j != j'. Throws resource_error when a cap is exceeded.
OrthogonalityReport orthogonality_check(const Protocol& proto, const CheckMatrix& m,
                                        const OrthogonalityOptions& options = {});

/// Exponents x_i with g_i s = omega^{x_i} s, or nullopt if s is not a joint eigenstate.
std::optional<GammaLabel> eigenlabel(const StateVector& s, const CheckMatrix& m, std::size_t cap = kDefaultDenseCap);

}  // namespace qdense

#endif  // QDENSE_SIMULATOR_H

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

#ifndef QDENSE_STABILIZER_H
#define QDENSE_STABILIZER_H

#include <optional>
#include <string>
#include <vector>

#include "qdense/modring.h"
#include "qdense/partition.h"
#include "qdense/pauli.h"

namespace qdense {

/// k generators over n qudits: a k x 2n matrix over Z_d plus one gamma-phase per row.
/// Column j is alpha_j (X exponents of qudit j), column n + j is beta_j.
class CheckMatrix {
   public:
    CheckMatrix(std::int64_t d, std::size_t n, const IntMatrix& rows, std::vector<std::int64_t> phases = {});
    explicit CheckMatrix(const std::vector<PauliWord>& generators);

    std::int64_t modulus() const { return d_; }
    std::size_t num_qudits() const { return n_; }
    std::size_t num_generators() const { return static_cast<std::size_t>(rows_.rows()); }
    const IntMatrix& rows() const { return rows_; }
    const std::vector<std::int64_t>& phases() const { return phases_; }

    PauliWord generator(std::size_t i) const;
    std::vector<PauliWord> generators() const;
    SymplecticVec row(std::size_t i) const;
    ModVec alpha(std::size_t j) const;
    ModVec beta(std::size_t j) const;

    friend bool operator==(const CheckMatrix&, const CheckMatrix&);

   private:
    std::int64_t d_;
    std::size_t n_;
    IntMatrix rows_;
    std::vector<std::int64_t> phases_;
};

struct ValidationReport {
    bool commuting = true;
    bool independent = true;
    bool all_in_G_prime = true;
    /// Present only when the dense completeness oracle ran.
    std::optional<bool> complete;
    std::vector<std::string> messages;

    bool ok() const { return commuting && independent && all_in_G_prime && complete.value_or(true); }
};

/// Checks commutation, ring independence of the rows, G' membership, and
/// (for k = n with d^n <= dense_cap) completeness.
ValidationReport validate(const CheckMatrix& m, std::size_t dense_cap = kDefaultDenseCap);

/// True iff the generators stabilize exactly one state. Builds rho_S column by
/// column with sparse Pauli action; requires k = n (std::invalid_argument) and
/// d^n <= dense_cap (resource_error).
bool is_complete(const CheckMatrix& m, std::size_t dense_cap = kDefaultDenseCap);

using GammaLabel = ModVec;

/// Eigenvalue exponents of g|psi_S>: sum_j a_j beta_j - b_j alpha_j.
GammaLabel gamma_label(const PauliWord& g, const CheckMatrix& m);

/// [[I_r, A1 | B, 0], [0, 0 | D, I_{n-r}]] after qudit relabeling.
struct StandardForm {
    CheckMatrix matrix;
    /// qudit_permutation[p] is the original qudit at reduced position p.
    std::vector<std::size_t> qudit_permutation;
    std::size_t r = 0;
    IntMatrix A1;
    IntMatrix B;
    IntMatrix D;
};

/// Gaussian elimination over the field Z_d using row swaps, row additions,
/// unit row scalings and simultaneous column swaps (j, n + j). Generator phases
/// follow the row operations exactly.
StandardForm standard_form(const CheckMatrix& m);

/// True iff all generators restricted to the qudits in T mutually commute.
bool restricted_commutation(const CheckMatrix& m, const std::vector<std::size_t>& qudits);

/// Qudit sets R_i, Q_i per sender for theorem1_protocol.
struct RQSets {
    std::vector<std::vector<std::size_t>> R;
    std::vector<std::vector<std::size_t>> Q;
};

struct BiseparabilityWitness {
    std::vector<std::size_t> first;
    std::vector<std::size_t> second;
    bool restricted_commutation_holds = false;
};

struct Corollary1Result {
    StandardForm form;
    /// Single-qudit senders and one receiver; absent when D = 0 and B offers no
    /// off-diagonal entry.
    std::optional<Partition> partition;
    std::optional<RQSets> certificate;
    std::optional<BiseparabilityWitness> witness;
    std::vector<std::string> notes;
};

/// Prime d, k = n. Builds the optimal single-qudit partition from a nonzero
/// entry of D, or from a nonzero off-diagonal entry of B when r = n.
Corollary1Result corollary1_partition(const CheckMatrix& m);

}  // namespace qdense

#endif  // QDENSE_STABILIZER_H

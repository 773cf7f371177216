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

#ifndef QDENSE_PARTITION_H
#define QDENSE_PARTITION_H

#include <cstddef>
#include <string>
#include <vector>

namespace qdense {

/// Sender groups T_1..T_m and the receiver group over qudits 0..n-1.
/// Indices are 0-based here; files and messages use 1-based labels.
struct Partition {
    std::size_t n = 0;
    std::vector<std::vector<std::size_t>> senders;
    std::vector<std::size_t> receiver;

    Partition() = default;
    /// Throws usage_error unless the groups are disjoint, nonempty
    /// senders, m >= 1, and cover 0..n-1.
    Partition(std::size_t n, std::vector<std::vector<std::size_t>> senders, std::vector<std::size_t> receiver);

    std::size_t num_senders() const { return senders.size(); }

    /// "1,2|3|4,5" with the last group the receiver (which may be empty: "1|2|").
    static Partition parse(const std::string& text, std::size_t n);
    std::string str() const;

    friend bool operator==(const Partition&, const Partition&) = default;
};

}  // namespace qdense

#endif  // QDENSE_PARTITION_H

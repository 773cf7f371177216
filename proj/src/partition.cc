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

#include "qdense/partition.h"

#include "qdense/modring.h"

#include <sstream>
#include <stdexcept>

namespace qdense {

Partition::Partition(std::size_t n_, std::vector<std::vector<std::size_t>> senders_,
                     std::vector<std::size_t> receiver_)
    : n(n_), senders(std::move(senders_)), receiver(std::move(receiver_)) {
    if (senders.empty()) throw usage_error("partition needs at least one sender");
    std::vector<int> seen(n, 0);
    auto mark = [&](std::size_t q) {
        if (q >= n) {
            throw usage_error("partition: qudit " + std::to_string(q + 1) + " out of range 1.." +
                                        std::to_string(n));
        }
        if (seen[q]++) throw usage_error("partition: qudit " + std::to_string(q + 1) + " appears twice");
    };
    for (const auto& group : senders) {
        if (group.empty()) throw usage_error("partition: empty sender group");
        for (auto q : group) mark(q);
    }
    for (auto q : receiver) mark(q);
    for (std::size_t q = 0; q < n; ++q) {
        if (!seen[q]) throw usage_error("partition: qudit " + std::to_string(q + 1) + " is unassigned");
    }
}

Partition Partition::parse(const std::string& text, std::size_t n) {
    std::vector<std::vector<std::size_t>> groups(1);
    std::string number;
    auto flush = [&]() {
        if (number.empty()) return;
        long v = std::stol(number);
        if (v < 1) throw usage_error("partition: qudit labels are 1-based");
        groups.back().push_back(static_cast<std::size_t>(v - 1));
        number.clear();
    };
    for (char c : text) {
        if (c >= '0' && c <= '9') {
            number.push_back(c);
        } else if (c == ',') {
            flush();
        } else if (c == '|') {
            flush();
            groups.emplace_back();
        } else if (c != ' ') {
            throw usage_error(std::string("partition: unexpected character '") + c + "'");
        }
    }
    flush();
    if (groups.size() < 2) throw usage_error("partition: expected sender groups and a receiver group");
    std::vector<std::size_t> receiver = std::move(groups.back());
    groups.pop_back();
    return Partition(n, std::move(groups), std::move(receiver));
}

std::string Partition::str() const {
    std::ostringstream out;
    auto group = [&](const std::vector<std::size_t>& g) {
        for (std::size_t i = 0; i < g.size(); ++i) out << (i ? "," : "") << g[i] + 1;
    };
    for (const auto& s : senders) {
        group(s);
        out << '|';
    }
    group(receiver);
    return out.str();
}

}  // namespace qdense

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

#ifndef QDENSE_IO_H
#define QDENSE_IO_H

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qdense/densecode.h"
#include "qdense/stabilizer.h"

namespace qdense {

/// Malformed JSON or a document that does not match the expected layout.
class parse_error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// {"d", "n", "generators": [{"phase", "paulis": [[a, b], ...]}]}; qudits and
/// senders are 1-based in every file.
CheckMatrix parse_stabilizer(std::string_view text);
std::string write_stabilizer(const CheckMatrix& m);

/// "fnv1a64:<16 hex digits>" over the canonical stabilizer document.
std::string stabilizer_hash(const CheckMatrix& m);

struct ProtocolFile {
    CheckMatrix stabilizer;
    Protocol protocol;
    std::string method;
    std::optional<RQSets> theorem1;
    std::optional<Theorem2Trace> theorem2_trace;
    /// As stored in the file; verify compares it with the encoding lists.
    std::vector<std::size_t> declared_alphabet;
    /// False when the stored label table did not fit the encoding lists and was dropped.
    bool stored_labels_fit = true;
};

/// Throws parse_error on layout problems and when the embedded hash does not
/// match the embedded stabilizer. Content that only disagrees with itself
/// (alphabet, label table) is kept for verify to reject.
ProtocolFile parse_protocol(std::string_view text);
std::string write_protocol(const ProtocolFile& file);

/// [[x_1 entries], ..., [x_n entries]].
RingBasis parse_basis(std::string_view text, std::int64_t d, std::size_t n);

/// {"z": [{"sender", "level", "vector"}], "a": [{"level", "value"}]}.
Theorem2Choices parse_choices(std::string_view text, std::int64_t d, std::size_t n);

/// {"R": [[...], ...], "Q": [[...], ...]}.
RQSets parse_rq_sets(std::string_view text, std::size_t n);

std::string read_file(const std::string& path);

}  // namespace qdense

#endif  // QDENSE_IO_H

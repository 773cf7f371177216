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

#include "qdense/io.h"

#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace qdense {

namespace {

using json = nlohmann::json;

constexpr const char* kProtocolFormat = "qdense-protocol";
constexpr int kProtocolVersion = 1;

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
}

const json& field(const json& j, const char* key) {
    if (!j.is_object()) throw parse_error(std::string("expected an object holding '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) throw parse_error(std::string("missing field '") + key + "'");
    return *it;
}

std::int64_t as_int(const json& j, const char* what) {
    if (!j.is_number_integer()) throw parse_error(std::string(what) + ": expected an integer");
    return j.get<std::int64_t>();
}

const json& as_array(const json& j, const char* what) {
    if (!j.is_array()) throw parse_error(std::string(what) + ": expected an array");
    return j;
}

std::size_t as_index(const json& j, std::size_t limit, const char* what) {
    const std::int64_t v = as_int(j, what);
    if (v < 1 || static_cast<std::size_t>(v) > limit) {
        throw parse_error(std::string(what) + ": index " + std::to_string(v) + " out of range 1.." +
                          std::to_string(limit));
    }
    return static_cast<std::size_t>(v - 1);
}

json indices_to_json(const std::vector<std::size_t>& v) {
    json out = json::array();
    for (auto i : v) out.push_back(i + 1);
    return out;
}

std::vector<std::size_t> indices_from_json(const json& j, std::size_t limit, const char* what) {
    std::vector<std::size_t> out;
    for (const auto& e : as_array(j, what)) out.push_back(as_index(e, limit, what));
    return out;
}

json vec_to_json(const ModVec& v) { return v.to_vector(); }

ModVec vec_from_json(const json& j, std::int64_t d, std::size_t n, const char* what) {
    const auto& a = as_array(j, what);
    if (a.size() != n) throw parse_error(std::string(what) + ": expected " + std::to_string(n) + " entries");
    std::vector<std::int64_t> values;
    for (const auto& e : a) values.push_back(as_int(e, what));
    return ModVec(d, std::span<const std::int64_t>(values));
}

json stabilizer_to_json(const CheckMatrix& m) {
    json gens = json::array();
    for (std::size_t i = 0; i < m.num_generators(); ++i) {
        const PauliWord g = m.generator(i);
        json paulis = json::array();
        for (const auto& [a, b] : g.pairs()) paulis.push_back({a, b});
        gens.push_back({{"phase", g.phase()}, {"paulis", paulis}});
    }
    return {{"d", m.modulus()}, {"n", m.num_qudits()}, {"generators", gens}};
}

CheckMatrix stabilizer_from_json(const json& j) {
    const std::int64_t d = as_int(field(j, "d"), "d");
    const std::int64_t n = as_int(field(j, "n"), "n");
    if (d < 2) throw parse_error("d must be at least 2");
    if (n < 1) throw parse_error("n must be at least 1");
    const auto& gens = as_array(field(j, "generators"), "generators");
    if (gens.empty()) throw parse_error("generators: at least one generator required");
    if (gens.size() > static_cast<std::size_t>(n)) throw parse_error("generators: more generators than qudits");
    const auto un = static_cast<std::size_t>(n);
    IntMatrix rows(static_cast<Eigen::Index>(gens.size()), static_cast<Eigen::Index>(2 * un));
    std::vector<std::int64_t> phases;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const auto& g = gens[i];
        phases.push_back(g.contains("phase") ? as_int(g["phase"], "phase") : 0);
        const auto& paulis = as_array(field(g, "paulis"), "paulis");
        if (paulis.size() != un) {
            throw parse_error("generator " + std::to_string(i + 1) + ": expected " + std::to_string(n) + " [a,b] pairs");
        }
        for (std::size_t k = 0; k < un; ++k) {
            const auto& pair = as_array(paulis[k], "paulis entry");
            if (pair.size() != 2) throw parse_error("generator " + std::to_string(i + 1) + ": entries are [a,b] pairs");
            rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = as_int(pair[0], "a");
            rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(un + k)) = as_int(pair[1], "b");
        }
    }
    return CheckMatrix(d, un, rows, std::move(phases));
}

json partition_to_json(const Partition& p) {
    json senders = json::array();
    for (const auto& s : p.senders) senders.push_back(indices_to_json(s));
    return {{"senders", senders}, {"receiver", indices_to_json(p.receiver)}};
}

Partition partition_from_json(const json& j, std::size_t n) {
    std::vector<std::vector<std::size_t>> senders;
    for (const auto& s : as_array(field(j, "senders"), "senders")) senders.push_back(indices_from_json(s, n, "senders"));
    return Partition(n, std::move(senders), indices_from_json(field(j, "receiver"), n, "receiver"));
}

json rq_to_json(const RQSets& rq) {
    json R = json::array(), Q = json::array();
    for (const auto& s : rq.R) R.push_back(indices_to_json(s));
    for (const auto& s : rq.Q) Q.push_back(indices_to_json(s));
    return {{"R", R}, {"Q", Q}};
}

RQSets rq_from_json(const json& j, std::size_t n) {
    RQSets rq;
    for (const auto& s : as_array(field(j, "R"), "R")) rq.R.push_back(indices_from_json(s, n, "R"));
    for (const auto& s : as_array(field(j, "Q"), "Q")) rq.Q.push_back(indices_from_json(s, n, "Q"));
    return rq;
}

json ints_to_json(const std::vector<std::int64_t>& v) { return v; }

std::vector<std::int64_t> ints_from_json(const json& j, const char* what) {
    std::vector<std::int64_t> out;
    for (const auto& e : as_array(j, what)) out.push_back(as_int(e, what));
    return out;
}

json trace_to_json(const Theorem2Trace& t) {
    json basis = json::array();
    for (const auto& x : t.basis.vectors()) basis.push_back(vec_to_json(x));
    json levels = json::array();
    for (const auto& l : t.levels) {
        json entries = json::array();
        for (const auto& e : l.entries) {
            entries.push_back({{"sender", e.sender + 1},
                               {"z", vec_to_json(e.z)},
                               {"witness", vec_to_json(e.witness)},
                               {"c", e.c},
                               {"eta", e.eta ? json(*e.eta) : json(nullptr)},
                               {"y", vec_to_json(e.y)}});
        }
        levels.push_back({{"P", indices_to_json(l.P)},
                          {"a", ints_to_json(l.a)},
                          {"Q", indices_to_json(l.Q)},
                          {"b", ints_to_json(l.b)},
                          {"entries", entries}});
    }
    return {{"basis", basis}, {"levels", levels}, {"notes", t.notes}};
}

Theorem2Trace trace_from_json(const json& j, const Partition& p, std::int64_t d) {
    const std::size_t n = p.n;
    const std::size_t m = p.num_senders();
    std::vector<ModVec> basis;
    for (const auto& x : as_array(field(j, "basis"), "basis")) basis.push_back(vec_from_json(x, d, n, "basis"));
    Theorem2Trace t{RingBasis(std::move(basis)), {}, {}};
    for (const auto& lj : as_array(field(j, "levels"), "levels")) {
        Theorem2Level l;
        l.P = indices_from_json(field(lj, "P"), m, "P");
        l.a = ints_from_json(field(lj, "a"), "a");
        l.Q = indices_from_json(field(lj, "Q"), m, "Q");
        l.b = ints_from_json(field(lj, "b"), "b");
        for (const auto& ej : as_array(field(lj, "entries"), "entries")) {
            const std::size_t sender = as_index(field(ej, "sender"), m, "sender");
            const auto& eta = field(ej, "eta");
            const std::size_t width = 2 * p.senders[sender].size();
            l.entries.push_back({sender, vec_from_json(field(ej, "z"), d, n, "z"),
                                 vec_from_json(field(ej, "witness"), d, width, "witness"),
                                 as_int(field(ej, "c"), "c"),
                                 eta.is_null() ? std::nullopt : std::optional<std::int64_t>(as_int(eta, "eta")),
                                 vec_from_json(field(ej, "y"), d, n, "y")});
        }
        t.levels.push_back(std::move(l));
    }
    for (const auto& note : as_array(field(j, "notes"), "notes")) {
        if (!note.is_string()) throw parse_error("notes: expected strings");
        t.notes.push_back(note.get<std::string>());
    }
    return t;
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// Constructors below throw invalid_argument on bad layouts; those become parse errors.
template <typename F>
auto guarded(F&& f) {
    try {
        return f();
    } catch (const parse_error&) {
        throw;
    } catch (const json::exception& e) {
        throw parse_error(e.what());
    } catch (const std::invalid_argument& e) {
        throw parse_error(e.what());
    }
}

}  // namespace

CheckMatrix parse_stabilizer(std::string_view text) {
    return guarded([&] { return stabilizer_from_json(parse_json(text)); });
}

std::string write_stabilizer(const CheckMatrix& m) { return stabilizer_to_json(m).dump(2) + "\n"; }

std::string stabilizer_hash(const CheckMatrix& m) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(stabilizer_to_json(m).dump())));
    return std::string("fnv1a64:") + buf;
}

ProtocolFile parse_protocol(std::string_view text) {
    return guarded([&] {
        const json j = parse_json(text);
        if (field(j, "format") != kProtocolFormat) throw parse_error("not a protocol file");
        if (as_int(field(j, "version"), "version") != kProtocolVersion) throw parse_error("unsupported protocol version");
        CheckMatrix m = stabilizer_from_json(field(j, "stabilizer"));
        if (field(j, "stabilizer_hash") != stabilizer_hash(m)) {
            throw parse_error("stabilizer_hash does not match the embedded stabilizer");
        }
        const std::int64_t d = m.modulus();
        const std::size_t n = m.num_qudits();
        Partition p = partition_from_json(field(j, "partition"), n);

        std::vector<std::vector<LocalEncoding>> encodings;
        for (const auto& sender : as_array(field(j, "encodings"), "encodings")) {
            std::vector<LocalEncoding> list;
            for (const auto& enc : as_array(sender, "encodings")) {
                LocalEncoding local;
                for (const auto& pair : as_array(enc, "encoding")) {
                    if (!pair.is_array() || pair.size() != 2) throw parse_error("encoding entries are [a,b] pairs");
                    local.emplace_back(as_int(pair[0], "a"), as_int(pair[1], "b"));
                }
                list.push_back(std::move(local));
            }
            encodings.push_back(std::move(list));
        }
        std::vector<std::vector<GammaLabel>> labels;
        if (j.contains("labels")) {
            for (const auto& sender : as_array(j["labels"], "labels")) {
                std::vector<GammaLabel> list;
                for (const auto& l : as_array(sender, "labels")) list.push_back(vec_from_json(l, d, n, "label"));
                labels.push_back(std::move(list));
            }
        }
        bool labels_fit = labels.empty() || labels.size() == encodings.size();
        for (std::size_t i = 0; labels_fit && i < labels.size(); ++i) labels_fit = labels[i].size() == encodings[i].size();
        if (!labels_fit) labels.clear();
        Protocol proto(d, p, std::move(encodings), std::move(labels));
        std::vector<std::size_t> declared = proto.alphabet();
        if (j.contains("alphabet")) {
            declared.clear();
            for (auto v : ints_from_json(j["alphabet"], "alphabet")) {
                if (v < 0) throw parse_error("alphabet: entries must be non-negative");
                declared.push_back(static_cast<std::size_t>(v));
            }
        }
        ProtocolFile file{std::move(m), std::move(proto), field(j, "method").get<std::string>(), std::nullopt,
                          std::nullopt, std::move(declared), labels_fit};
        if (j.contains("theorem1")) file.theorem1 = rq_from_json(j["theorem1"], n);
        if (j.contains("theorem2_trace")) file.theorem2_trace = trace_from_json(j["theorem2_trace"], p, d);
        return file;
    });
}

std::string write_protocol(const ProtocolFile& file) {
    const Protocol& proto = file.protocol;
    json encodings = json::array();
    for (const auto& list : proto.encodings()) {
        json sender = json::array();
        for (const auto& enc : list) {
            json e = json::array();
            for (const auto& [a, b] : enc) e.push_back({a, b});
            sender.push_back(e);
        }
        encodings.push_back(sender);
    }
    json j = {{"format", kProtocolFormat},
              {"version", kProtocolVersion},
              {"stabilizer", stabilizer_to_json(file.stabilizer)},
              {"stabilizer_hash", stabilizer_hash(file.stabilizer)},
              {"partition", partition_to_json(proto.partition())},
              {"alphabet", proto.alphabet()},
              {"method", file.method},
              {"encodings", encodings}};
    if (proto.has_labels()) {
        json labels = json::array();
        for (const auto& list : proto.labels()) {
            json sender = json::array();
            for (const auto& l : list) sender.push_back(vec_to_json(l));
            labels.push_back(sender);
        }
        j["labels"] = labels;
    }
    if (file.theorem1) j["theorem1"] = rq_to_json(*file.theorem1);
    if (file.theorem2_trace) j["theorem2_trace"] = trace_to_json(*file.theorem2_trace);
    return j.dump(2) + "\n";
}

RingBasis parse_basis(std::string_view text, std::int64_t d, std::size_t n) {
    return guarded([&] {
        const json j = parse_json(text);
        const json& list = j.is_object() ? field(j, "basis") : j;
        std::vector<ModVec> vectors;
        for (const auto& x : as_array(list, "basis")) vectors.push_back(vec_from_json(x, d, n, "basis"));
        if (vectors.size() != n) throw parse_error("basis: expected " + std::to_string(n) + " vectors");
        return RingBasis(std::move(vectors));
    });
}

Theorem2Choices parse_choices(std::string_view text, std::int64_t d, std::size_t n) {
    return guarded([&] {
        const json j = parse_json(text);
        if (!j.is_object()) throw parse_error("choices: expected an object");
        Theorem2Choices c;
        if (j.contains("z")) {
            for (const auto& e : as_array(j["z"], "z")) {
                const std::int64_t sender = as_int(field(e, "sender"), "sender");
                if (sender < 1) throw parse_error("sender: indices are 1-based");
                const std::size_t level = as_index(field(e, "level"), n, "level");
                c.z.insert_or_assign({static_cast<std::size_t>(sender - 1), level}, vec_from_json(field(e, "vector"), d, n, "vector"));
            }
        }
        if (j.contains("a")) {
            for (const auto& e : as_array(j["a"], "a")) {
                c.a[as_index(field(e, "level"), n, "level")] = ints_from_json(field(e, "value"), "value");
            }
        }
        return c;
    });
}

RQSets parse_rq_sets(std::string_view text, std::size_t n) {
    return guarded([&] { return rq_from_json(parse_json(text), n); });
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw usage_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace qdense

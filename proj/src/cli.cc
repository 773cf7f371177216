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

#include "qdense/cli.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qdense/densecode.h"
#include "qdense/io.h"
#include "qdense/simulator.h"
#include "qdense/stabilizer.h"

namespace qdense {

namespace {

using json = nlohmann::json;

std::size_t env_size(const char* name, std::size_t fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(v, &end, 10);
    if (*end != '\0' || parsed == 0) throw usage_error(std::string(name) + " must be a positive integer");
    return static_cast<std::size_t>(parsed);
}

template <typename T>
std::string tuple_str(const std::vector<T>& v) {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
    out << ')';
    return out.str();
}

std::string one_based(const std::vector<std::size_t>& v) {
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i] + 1;
    out << '}';
    return out.str();
}

json one_based_json(const std::vector<std::size_t>& v) {
    json out = json::array();
    for (auto i : v) out.push_back(i + 1);
    return out;
}

json matrix_json(const IntMatrix& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        out.push_back(row);
    }
    return out;
}

void print_matrix(std::ostream& out, const char* name, const IntMatrix& m) {
    out << name << " (" << m.rows() << "x" << m.cols() << ")\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out << "  [";
        for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
        out << "]\n";
    }
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw usage_error("cannot write " + path);
    f << content;
}

struct Context {
    std::ostream& out;
    std::ostream& err;
    CliLimits limits;
    bool json_output = false;
};

// ------------------------------------------------------------------ validate

int cmd_validate(Context& ctx, const std::string& path) {
    const CheckMatrix m = parse_stabilizer(read_file(path));
    const ValidationReport r = validate(m, ctx.limits.dense_cap);
    if (ctx.json_output) {
        json j = {{"commuting", r.commuting},
                  {"independent", r.independent},
                  {"in_G_prime", r.all_in_G_prime},
                  {"complete", r.complete ? json(*r.complete) : json(nullptr)},
                  {"messages", r.messages},
                  {"ok", r.ok()}};
        ctx.out << j.dump(2) << "\n";
    } else {
        ctx.out << "d = " << m.modulus() << ", n = " << m.num_qudits() << ", k = " << m.num_generators() << "\n";
        ctx.out << "commuting:   " << yes_no(r.commuting) << "\n";
        ctx.out << "independent: " << yes_no(r.independent) << "\n";
        ctx.out << "in G':       " << yes_no(r.all_in_G_prime) << "\n";
        ctx.out << "complete:    " << (r.complete ? yes_no(*r.complete) : "not checked") << "\n";
        for (const auto& msg : r.messages) ctx.out << "- " << msg << "\n";
        ctx.out << (r.ok() ? "PASS" : "FAIL") << "\n";
    }
    return r.ok() ? kExitPass : kExitFail;
}

// --------------------------------------------------------------------- synth

struct SynthArgs {
    std::string path;
    std::string method = "theorem1";
    std::string partition;
    std::string sets;
    std::string basis;
    std::string choices;
    std::string out;
};

int report_synth(Context& ctx, const ProtocolFile& file, const std::string& out_path,
                 const std::vector<std::string>& notes) {
    const Protocol& proto = file.protocol;
    const auto alphabet = proto.alphabet();
    const BoundReport bounds = check_bounds(alphabet, proto.modulus(), proto.partition());
    const std::string doc = write_protocol(file);
    if (!out_path.empty()) write_text_file(out_path, doc);
    if (ctx.json_output) {
        json j = {{"method", file.method},
                  {"partition", proto.partition().str()},
                  {"alphabet", alphabet},
                  {"product", bounds.product},
                  {"capacity", bounds.capacity},
                  {"bounds_ok", bounds.ok()},
                  {"optimal", bounds.optimal},
                  {"useful", bounds.useful},
                  {"notes", notes}};
        if (out_path.empty()) {
            j["protocol"] = json::parse(doc);
        } else {
            j["out"] = out_path;
        }
        ctx.out << j.dump(2) << "\n";
    } else {
        ctx.out << "method:    " << file.method << "\n";
        ctx.out << "partition: " << proto.partition().str() << "\n";
        if (file.theorem1) {
            for (std::size_t i = 0; i < file.theorem1->R.size(); ++i) {
                ctx.out << "sender " << i + 1 << ": R = " << one_based(file.theorem1->R[i])
                        << ", Q = " << one_based(file.theorem1->Q[i]) << "\n";
            }
        }
        if (file.theorem2_trace) {
            const auto& levels = file.theorem2_trace->levels;
            for (std::size_t j = 0; j < levels.size(); ++j) {
                ctx.out << "level " << j + 1 << ": P = " << one_based(levels[j].P) << ", a = " << tuple_str(levels[j].a)
                        << ", Q = " << one_based(levels[j].Q) << "\n";
            }
        }
        ctx.out << "alphabet:  " << tuple_str(alphabet) << "\n";
        ctx.out << "product:   " << bounds.product << " of " << bounds.capacity << "\n";
        ctx.out << "optimal:   " << yes_no(bounds.optimal) << "\n";
        ctx.out << "useful:    " << yes_no(bounds.useful) << "\n";
        for (const auto& note : notes) ctx.out << "note: " << note << "\n";
        if (!out_path.empty()) ctx.out << "written:   " << out_path << "\n";
    }
    return kExitPass;
}

int cmd_synth(Context& ctx, const SynthArgs& a) {
    const CheckMatrix m = parse_stabilizer(read_file(a.path));
    const std::size_t n = m.num_qudits();
    auto need_partition = [&]() {
        if (a.partition.empty()) throw usage_error("--partition is required for method " + a.method);
        try {
            return Partition::parse(a.partition, n);
        } catch (const usage_error&) {
            throw;
        } catch (const std::invalid_argument& e) {
            throw usage_error(e.what());
        }
    };
    if (a.method == "theorem1") {
        const Partition p = need_partition();
        if (!a.sets.empty()) {
            RQSets sets = parse_rq_sets(read_file(a.sets), n);
            Protocol proto = theorem1_protocol(m, p, sets);
            return report_synth(ctx, {m, std::move(proto), "theorem1", std::move(sets), std::nullopt, {}, true}, a.out,
                                {});
        }
        auto found = synth_theorem1(m, p);
        if (!found) {
            ctx.err << "no protocol found by this method (not a proof that none exists)\n";
            return kExitFail;
        }
        return report_synth(ctx, {m, std::move(found->protocol), "theorem1", std::move(found->sets), std::nullopt, {}, true},
                            a.out, {});
    }
    if (a.method == "theorem2") {
        const Partition p = need_partition();
        const RingBasis basis =
            a.basis.empty() ? RingBasis::standard(m.modulus(), n) : parse_basis(read_file(a.basis), m.modulus(), n);
        const Theorem2Choices choices =
            a.choices.empty() ? Theorem2Choices{} : parse_choices(read_file(a.choices), m.modulus(), n);
        Theorem2Result r = theorem2_pipeline(m, p, basis, choices, ctx.limits.span_cap);
        auto notes = r.trace.notes;
        return report_synth(ctx, {m, std::move(r.protocol), "theorem2", std::nullopt, std::move(r.trace), {}, true},
                            a.out, notes);
    }
    if (a.method == "corollary1") {
        Corollary1Result c = corollary1_partition(m);
        if (!c.partition) {
            ctx.err << "no protocol found by this method (not a proof that none exists)\n";
            if (c.witness) {
                ctx.err << "bipartition " << one_based(c.witness->first) << " | " << one_based(c.witness->second)
                        << ": restricted generators commute: " << yes_no(c.witness->restricted_commutation_holds)
                        << "\n";
            }
            return kExitFail;
        }
        std::vector<std::string> notes = c.notes;
        if (!a.partition.empty()) notes.push_back("--partition ignored; corollary1 chooses the partition");
        Protocol proto = theorem1_protocol(m, *c.partition, *c.certificate);
        return report_synth(ctx, {m, std::move(proto), "corollary1", std::move(c.certificate), std::nullopt, {}, true},
                            a.out, notes);
    }
    throw usage_error("unknown method '" + a.method + "' (expected theorem1, theorem2 or corollary1)");
}

// -------------------------------------------------------------------- verify

struct SimArgs {
    std::string path;
    bool simulate = false;
    std::size_t sample = 0;
    std::uint64_t seed = 0;
};

json orthogonality_json(const OrthogonalityReport& r) {
    return {{"pass", r.pass},
            {"mode", r.mode},
            {"states", r.states},
            {"pairs_checked", r.pairs_checked},
            {"max_overlap", r.max_overlap},
            {"worst_residual", r.worst_residual}};
}

void print_orthogonality(std::ostream& out, const OrthogonalityReport& r) {
    out << "simulation (" << r.mode << "): " << r.pairs_checked << " pairs over " << r.states
        << " states, max overlap " << r.max_overlap << ", worst residual " << r.worst_residual << ": "
        << (r.pass ? "PASS" : "FAIL") << "\n";
}

OrthogonalityReport run_orthogonality(const Context& ctx, const ProtocolFile& file, const SimArgs& a) {
    OrthogonalityOptions options;
    options.dense_cap = ctx.limits.dense_cap;
    options.pair_cap = ctx.limits.pair_cap;
    options.seed = a.seed;
    if (a.sample > 0) options.sample_pairs = a.sample;
    return orthogonality_check(file.protocol, file.stabilizer, options);
}

int cmd_verify(Context& ctx, const SimArgs& a) {
    const ProtocolFile file = parse_protocol(read_file(a.path));
    std::vector<std::string> problems;
    if (file.declared_alphabet != file.protocol.alphabet()) {
        problems.push_back("declared alphabet " + tuple_str(file.declared_alphabet) + " differs from the encoding lists " +
                           tuple_str(file.protocol.alphabet()));
    }
    if (!file.stored_labels_fit) problems.push_back("stored label table does not fit the encoding lists");
    Protocol fresh = file.protocol;
    fresh.compute_labels(file.stabilizer);
    if (file.protocol.has_labels() && file.protocol.labels() != fresh.labels()) {
        problems.push_back("stored label table differs from the recomputed labels");
    }
    const LabelReport labels = check_labels(fresh, ctx.limits.span_cap);
    if (!labels.distinct) problems.push_back("label sums collide");
    const BoundReport bounds = check_bounds(fresh.alphabet(), fresh.modulus(), fresh.partition());
    if (!bounds.ok()) problems.push_back("alphabet violates the capacity bounds");

    std::optional<OrthogonalityReport> sim;
    if (a.simulate) {
        sim = run_orthogonality(ctx, file, a);
        if (!sim->pass) problems.push_back("simulated states are not mutually orthogonal");
    }
    const bool pass = problems.empty();
    if (ctx.json_output) {
        json j = {{"pass", pass},
                  {"alphabet", fresh.alphabet()},
                  {"messages", labels.messages},
                  {"distinct_sums", labels.distinct_sums},
                  {"optimal", bounds.optimal},
                  {"useful", bounds.useful},
                  {"problems", problems}};
        if (sim) j["simulation"] = orthogonality_json(*sim);
        ctx.out << j.dump(2) << "\n";
    } else {
        ctx.out << "alphabet: " << tuple_str(fresh.alphabet()) << "\n";
        ctx.out << "labels:   " << labels.distinct_sums << " distinct sums for " << labels.messages << " messages\n";
        ctx.out << "optimal:  " << yes_no(bounds.optimal) << "\n";
        ctx.out << "useful:   " << yes_no(bounds.useful) << "\n";
        if (sim) print_orthogonality(ctx.out, *sim);
        for (const auto& p : problems) ctx.out << "- " << p << "\n";
        ctx.out << (pass ? "PASS" : "FAIL") << "\n";
    }
    return pass ? kExitPass : kExitFail;
}

// ------------------------------------------------------------- standard-form

int cmd_standard_form(Context& ctx, const std::string& path) {
    const CheckMatrix m = parse_stabilizer(read_file(path));
    if (!is_prime(m.modulus())) {
        ctx.err << "standard form needs a prime d; d = " << m.modulus() << " is composite and Z_d is not a field\n";
        return kExitFail;
    }
    const Corollary1Result c = corollary1_partition(m);
    const StandardForm& sf = c.form;
    if (ctx.json_output) {
        json cor = {{"notes", c.notes}};
        if (c.partition) {
            cor["partition"] = c.partition->str();
            json R = json::array(), Q = json::array();
            for (const auto& s : c.certificate->R) R.push_back(one_based_json(s));
            for (const auto& s : c.certificate->Q) Q.push_back(one_based_json(s));
            cor["R"] = R;
            cor["Q"] = Q;
        }
        if (c.witness) {
            cor["witness"] = {{"first", one_based_json(c.witness->first)},
                              {"second", one_based_json(c.witness->second)},
                              {"restricted_commutation", c.witness->restricted_commutation_holds}};
        }
        json j = {{"r", sf.r},
                  {"permutation", one_based_json(sf.qudit_permutation)},
                  {"A1", matrix_json(sf.A1)},
                  {"B", matrix_json(sf.B)},
                  {"D", matrix_json(sf.D)},
                  {"matrix", json::parse(write_stabilizer(sf.matrix))},
                  {"corollary1", cor}};
        ctx.out << j.dump(2) << "\n";
        return kExitPass;
    }
    ctx.out << "r = " << sf.r << "\n";
    ctx.out << "permutation (original qudit at each position):";
    for (auto q : sf.qudit_permutation) ctx.out << ' ' << q + 1;
    ctx.out << "\n";
    ctx.out << "reduced generators:\n";
    for (const auto& g : sf.matrix.generators()) ctx.out << "  " << g.str() << "\n";
    print_matrix(ctx.out, "A1", sf.A1);
    print_matrix(ctx.out, "B", sf.B);
    print_matrix(ctx.out, "D", sf.D);
    if (c.partition) {
        ctx.out << "corollary1 partition: " << c.partition->str() << "\n";
        for (std::size_t i = 0; i < c.certificate->R.size(); ++i) {
            ctx.out << "  sender " << i + 1 << ": R = " << one_based(c.certificate->R[i])
                    << ", Q = " << one_based(c.certificate->Q[i]) << "\n";
        }
    } else if (c.witness) {
        ctx.out << "corollary1: no partition; bipartition " << one_based(c.witness->first) << " | "
                << one_based(c.witness->second)
                << ", restricted generators commute: " << yes_no(c.witness->restricted_commutation_holds) << "\n";
    }
    for (const auto& note : c.notes) ctx.out << "note: " << note << "\n";
    return kExitPass;
}

// ------------------------------------------------------------------ simulate

bool looks_like_protocol(const std::string& text) {
    try {
        const json j = json::parse(text);
        return j.is_object() && j.contains("format");
    } catch (const json::exception&) {
        return false;
    }
}

int cmd_simulate(Context& ctx, const SimArgs& a) {
    const std::string text = read_file(a.path);
    if (looks_like_protocol(text)) {
        const ProtocolFile file = parse_protocol(text);
        const OrthogonalityReport r = run_orthogonality(ctx, file, a);
        if (ctx.json_output) {
            ctx.out << orthogonality_json(r).dump(2) << "\n";
        } else {
            print_orthogonality(ctx.out, r);
        }
        return r.pass ? kExitPass : kExitFail;
    }
    const CheckMatrix m = parse_stabilizer(text);
    BuildOptions options;
    options.cap = ctx.limits.dense_cap;
    const StateVector s = build_state(m, options);
    const double residual = stabilizer_residual(s, m);
    constexpr std::size_t kShown = 64;
    constexpr double kZero = 1e-12;
    std::vector<std::pair<std::size_t, std::complex<double>>> support;
    for (std::size_t k = 0; k < s.dimension(); ++k) {
        const auto v = s.amplitudes[static_cast<Eigen::Index>(k)];
        if (std::abs(v) > kZero) support.emplace_back(k, v);
    }
    auto digits = [&](std::size_t index) {
        std::vector<std::int64_t> out(m.num_qudits());
        for (std::size_t q = m.num_qudits(); q-- > 0;) {
            out[q] = static_cast<std::int64_t>(index % static_cast<std::size_t>(m.modulus()));
            index /= static_cast<std::size_t>(m.modulus());
        }
        return out;
    };
    if (ctx.json_output) {
        json amps = json::array();
        for (std::size_t t = 0; t < std::min(support.size(), kShown); ++t) {
            amps.push_back({{"basis", digits(support[t].first)},
                            {"re", support[t].second.real()},
                            {"im", support[t].second.imag()}});
        }
        json j = {{"dimension", s.dimension()},
                  {"support", support.size()},
                  {"worst_residual", residual},
                  {"amplitudes", amps}};
        ctx.out << j.dump(2) << "\n";
    } else {
        ctx.out << "dimension " << s.dimension() << ", support " << support.size() << ", worst residual " << residual
                << "\n";
        for (std::size_t t = 0; t < std::min(support.size(), kShown); ++t) {
            const auto d = digits(support[t].first);
            ctx.out << "  |";
            for (std::size_t q = 0; q < d.size(); ++q) ctx.out << (q ? "," : "") << d[q];
            ctx.out << "> " << support[t].second.real() << (support[t].second.imag() < 0 ? " - " : " + ")
                    << std::abs(support[t].second.imag()) << "i\n";
        }
        if (support.size() > kShown) ctx.out << "  ... " << support.size() - kShown << " more\n";
    }
    return kExitPass;
}

}  // namespace

CliLimits CliLimits::from_environment() {
    return {env_size("QDENSE_SPAN_CAP", kDefaultSpanCap), env_size("QDENSE_DENSE_CAP", kDefaultDenseCap),
            env_size("QDENSE_PAIR_CAP", kDefaultPairCap)};
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CliLimits limits{};
    try {
        limits = CliLimits::from_environment();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return run_cli(args, out, err, limits);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const CliLimits& limits) {
    CLI::App app{"Synthesize and verify distributed dense-coding protocols on qudit stabilizer states", "qdense"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "text";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

    std::string stabilizer_path;
    auto* validate_cmd = app.add_subcommand("validate", "Check commutation, independence, G' and completeness");
    validate_cmd->add_option("stabilizer", stabilizer_path, "Stabilizer JSON file")->required();

    SynthArgs synth;
    auto* synth_cmd = app.add_subcommand("synth", "Synthesize a protocol");
    synth_cmd->add_option("stabilizer", synth.path, "Stabilizer JSON file")->required();
    synth_cmd->add_option("--method", synth.method, "theorem1, theorem2 or corollary1")
        ->check(CLI::IsMember({"theorem1", "theorem2", "corollary1"}));
    synth_cmd->add_option("--partition", synth.partition, "Sender groups then receiver, e.g. 1,2|3|4,5");
    synth_cmd->add_option("--sets", synth.sets, "theorem1: JSON file with explicit R and Q sets");
    synth_cmd->add_option("--basis", synth.basis, "theorem2: JSON file with the basis vectors");
    synth_cmd->add_option("--choices", synth.choices, "theorem2: JSON file pinning z and a choices");
    synth_cmd->add_option("--out", synth.out, "Write the protocol file here");

    SimArgs sim;
    auto* verify_cmd = app.add_subcommand("verify", "Verify a protocol file");
    verify_cmd->add_option("protocol", sim.path, "Protocol JSON file")->required();
    verify_cmd->add_flag("--simulate", sim.simulate, "Also check orthogonality by state-vector simulation");
    verify_cmd->add_option("--sample", sim.sample, "Simulate this many random pairs instead of all pairs");
    verify_cmd->add_option("--seed", sim.seed, "Seed for --sample");

    auto* sf_cmd = app.add_subcommand("standard-form", "Print the standard form and the single-qudit partition");
    sf_cmd->add_option("stabilizer", stabilizer_path, "Stabilizer JSON file")->required();

    auto* simulate_cmd = app.add_subcommand("simulate", "Build the state, or check a protocol by simulation");
    simulate_cmd->add_option("file", sim.path, "Stabilizer or protocol JSON file")->required();
    simulate_cmd->add_option("--sample", sim.sample, "Simulate this many random pairs instead of all pairs");
    simulate_cmd->add_option("--seed", sim.seed, "Seed for --sample");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    Context ctx{out, err, limits, format == "json"};
    try {
        if (validate_cmd->parsed()) return cmd_validate(ctx, stabilizer_path);
        if (synth_cmd->parsed()) return cmd_synth(ctx, synth);
        if (verify_cmd->parsed()) return cmd_verify(ctx, sim);
        if (sf_cmd->parsed()) return cmd_standard_form(ctx, stabilizer_path);
        if (simulate_cmd->parsed()) return cmd_simulate(ctx, sim);
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const resource_error& e) {
        err << "resource limit: " << e.what() << "\n";
        return kExitFail;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}

}  // namespace qdense

/**************************************************************************
 * hmsr.cpp
 *
 * Copyright 2026 The hmsr Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

// Command-line front end. Exit codes: 0 ok, 1 verification failed,
// 2 configuration error, 3 bad input, 4 internal invariant violated.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "hmsr/audit.hpp"
#include "hmsr/descriptor.hpp"
#include "hmsr/repair2.hpp"
#include "hmsr/storage.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace hmsr;

namespace {

enum Exit : int { kOk = 0, kVerifyFailed = 1, kConfig = 2, kInput = 3, kInternal = 4 };

struct ExitError : std::runtime_error {
    int code;
    ExitError(int c, const std::string& what) : std::runtime_error(what), code(c) {}
};

struct Globals {
    std::string descriptor;
    std::optional<std::uint64_t> seed;
    std::string transcript;
    bool quiet = false;
};

std::uint64_t resolve_seed(const Globals& g) {
    if (g.seed) return *g.seed;
    if (const char* env = std::getenv("HMSR_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ExitError(kConfig, std::string("HMSR_SEED is not an integer: ") + env);
        }
    }
    return 1;
}

AnyCode load_descriptor(const Globals& g) {
    if (g.descriptor.empty()) throw ExitError(kConfig, "--descriptor is required");
    try {
        return descriptor_from_json(read_text(g.descriptor));
    } catch (const Error& e) {
        throw ExitError(kInput, "descriptor " + g.descriptor + ": " + e.what());
    }
}

std::string summary(const AnyCode& code) {
    std::ostringstream os;
    const unsigned k = code_k(code);
    const std::size_t N = code_N(code);
    os << "kind: " << (std::holds_alternative<CodeDescriptor2>(code) ? "hadamard-2parity" : "hadamard-mparity")
       << "\n(n, k) = (" << k + code_parities(code) << ", " << k << "), q = " << code_field(code).q() << "\n"
       << "N = " << N << " symbols per node, M = " << k * N << " symbols per stripe\n";
    const auto bw = target_bandwidth(code, NodeId::systematic(1));
    os << "repair bandwidth: " << *bw << "/" << k * N << " symbols";
    if (std::holds_alternative<CodeDescriptorM>(code)) os << " (systematic nodes)";
    os << "\n";
    return os.str();
}

// --- gen -------------------------------------------------------------------

int cmd_gen(const Globals& g, unsigned k, unsigned m, std::optional<std::uint32_t> q, const std::string& out) {
    AnyCode code;
    try {
        if (q && (*q >= kMaxModulus || *q == 2 || !is_prime(*q)))
            throw ExitError(kConfig, "q = " + std::to_string(*q) + " is not an odd prime below 65536");
        if (m < 2) throw ExitError(kConfig, "m must be at least 2");
        if (m == 2) {
            std::uint32_t qq = q.value_or(2 * k + 3);
            while (!q && !is_prime(qq)) ++qq;
            code = build_code2(k, PrimeField(qq));
        } else {
            const std::uint64_t seed = resolve_seed(g);
            code = q ? build_code_m(k, m, PrimeField(*q), seed) : build_code_m_auto(k, m, seed);
        }
    } catch (const Error& e) {
        throw ExitError(kConfig, e.what());
    }
    const std::string json = descriptor_to_json(code);
    const std::string path = out.empty() ? g.descriptor : out;
    if (path.empty())
        std::cout << json;
    else
        write_text(path, json);
    if (!g.quiet) (path.empty() ? std::cerr : std::cout) << summary(code);
    return kOk;
}

// --- encode / decode ---------------------------------------------------------

int cmd_encode(const Globals& g, const std::string& in, const std::string& dir) {
    const AnyCode code = load_descriptor(g);
    std::vector<std::uint8_t> bytes;
    try {
        bytes = read_binary(in);
    } catch (const Error& e) {
        throw ExitError(kInput, e.what());
    }
    const EncodedFile enc = encode_file(code, bytes);
    fs::create_directories(dir);
    for (std::size_t j = 0; j < enc.nodes.size(); ++j) {
        std::vector<std::uint8_t> blob;
        for (const auto& rec : enc.nodes[j]) {
            const auto b = serialize_chunk(rec);
            blob.insert(blob.end(), b.begin(), b.end());
        }
        write_binary(fs::path(dir) / chunk_file_name(static_cast<unsigned>(j + 1)), blob);
    }
    write_text(fs::path(dir) / kManifestName, manifest_to_json(enc.manifest));
    if (!g.quiet)
        std::cout << "encoded " << bytes.size() << " bytes into " << enc.manifest.stripes << " stripe(s) across "
                  << enc.nodes.size() << " nodes in " << dir << "\n";
    return kOk;
}

struct LoadedDir {
    Manifest manifest;
    std::vector<std::vector<ChunkRecord>> nodes;  // empty when the file is absent
    std::vector<unsigned> missing;
};

LoadedDir load_dir(const AnyCode& code, const std::string& dir) {
    LoadedDir d;
    try {
        d.manifest = manifest_from_json(read_text(fs::path(dir) / kManifestName));
    } catch (const Error& e) {
        throw ExitError(kInput, e.what());
    }
    if (d.manifest.descriptor_hash != hash_hex(descriptor_hash(code)))
        throw ExitError(kInput, "manifest was written for a different descriptor");
    const unsigned k = code_k(code);
    const unsigned n = k + code_parities(code);
    const std::size_t N = code_N(code);
    if (d.manifest.k != k || d.manifest.n != n || d.manifest.N != N)
        throw ExitError(kInput, "manifest shape does not match the descriptor");
    d.nodes.resize(n);
    for (unsigned flat = 1; flat <= n; ++flat) {
        const fs::path p = fs::path(dir) / chunk_file_name(flat);
        if (!fs::exists(p)) {
            d.missing.push_back(flat);
            continue;
        }
        try {
            d.nodes[flat - 1] = parse_chunks(read_binary(p));
        } catch (const Error& e) {
            throw ExitError(kInput, p.string() + ": " + e.what());
        }
        if (d.nodes[flat - 1].size() != d.manifest.stripes)
            throw ExitError(kInput, p.string() + ": stripe count does not match the manifest");
        for (const auto& rec : d.nodes[flat - 1])
            if (rec.header.q != code_field(code).q() || rec.header.N != N || rec.header.node != flat)
                throw ExitError(kInput, p.string() + ": header does not match the descriptor");
    }
    return d;
}

int cmd_decode(const Globals& g, const std::string& dir, const std::string& out) {
    const AnyCode code = load_descriptor(g);
    const LoadedDir d = load_dir(code, dir);
    if (d.nodes.size() - d.missing.size() < code_k(code))
        throw ExitError(kInput, "fewer than k chunks present");
    std::vector<std::uint8_t> bytes;
    try {
        bytes = decode_file(code, d.manifest, d.nodes);
    } catch (const Error& e) {
        throw ExitError(e.kind() == ErrorKind::format ? kInput : kInternal, e.what());
    }
    write_binary(out, bytes);
    if (!g.quiet) std::cout << "decoded " << bytes.size() << " bytes to " << out << "\n";
    return kOk;
}

// --- repair ------------------------------------------------------------------

int cmd_repair(const Globals& g, const std::string& dir, unsigned node, const std::string& out) {
    const AnyCode code = load_descriptor(g);
    LoadedDir d = load_dir(code, dir);
    const unsigned k = code_k(code);
    const unsigned p = code_parities(code);
    const unsigned n = k + p;
    if (d.missing.size() > 1) throw ExitError(kInput, std::to_string(d.missing.size()) + " chunks missing; only single failures are repairable");
    if (node == 0) {
        if (d.missing.empty()) throw ExitError(kInput, "no chunk is missing; name one with --node");
        node = d.missing.front();
    }
    if (node > n) throw ExitError(kConfig, "node must be in 1.." + std::to_string(n));
    if (!d.missing.empty() && d.missing.front() != node)
        throw ExitError(kInput, "chunk " + std::to_string(d.missing.front()) + " is also missing");

    const NodeId failed = NodeId::from_flat(node, k, p);
    const DiagonalCode gen = code_generator(code);
    RepairPlan plan;
    try {
        plan = plan_repair(code, failed);
    } catch (const Error& e) {
        throw ExitError(e.kind() == ErrorKind::invalid_descriptor ? kConfig : kInternal, e.what());
    }

    std::vector<ChunkRecord> rebuilt;
    RepairTranscript first;
    bool ok = true;
    for (std::size_t s = 0; s < d.manifest.stripes; ++s) {
        std::vector<NodeContents> survivors;
        for (unsigned flat = 1; flat <= n; ++flat)
            if (flat != node) survivors.push_back({NodeId::from_flat(flat, k, p), d.nodes[flat - 1][s].symbols});
        RepairTranscript t;
        try {
            t = execute_repair(plan, survivors);
        } catch (const Error& e) {
            throw ExitError(kInternal, "stripe " + std::to_string(s) + ": " + e.what());
        }
        // Independent check: decode from k survivors and re-encode the lost node.
        survivors.resize(k);
        const auto reference = encode(gen, decode_dc(gen, survivors));
        t.ok = reference[node - 1].data == t.recovered;
        ok = ok && t.ok;
        if (s == 0) first = t;
        ChunkHeader h{static_cast<std::uint16_t>(code_field(code).q()), static_cast<std::uint16_t>(node),
                      static_cast<std::uint32_t>(code_N(code)), static_cast<std::uint32_t>(2 * code_N(code))};
        rebuilt.push_back({h, std::move(t.recovered)});
    }
    first.ok = ok;

    if (!g.transcript.empty()) {
        auto j = nlohmann::ordered_json::parse(transcript_json(first, k));
        j["stripes"] = d.manifest.stripes;
        j["gamma_total"] = first.gamma * d.manifest.stripes;
        write_text(g.transcript, j.dump(2) + "\n");
    }
    if (!ok) throw ExitError(kInternal, "repaired chunk disagrees with the re-encoded reference");

    std::vector<std::uint8_t> blob;
    for (const auto& rec : rebuilt) {
        const auto b = serialize_chunk(rec);
        blob.insert(blob.end(), b.begin(), b.end());
    }
    write_binary(out.empty() ? fs::path(dir) / chunk_file_name(node) : fs::path(out), blob);
    if (!g.quiet) {
        std::cout << "repaired node " << node << " (" << failed.label() << "): gamma = " << first.gamma
                  << " symbols per stripe";
        if (const auto target = target_bandwidth(code, failed)) std::cout << " (target " << *target << ")";
        std::cout << ", file size " << k * code_N(code) << ", " << d.manifest.stripes << " stripe(s)\n";
        for (const auto& tr : first.transfers)
            std::cout << "  node " << tr.node.flat(k) << " sent " << tr.symbols.size() << "\n";
    }
    return kOk;
}

// --- verify ------------------------------------------------------------------

int cmd_verify(const Globals& g) {
    const AnyCode code = load_descriptor(g);
    const AuditReport r = audit(code);
    if (!g.quiet) std::cout << summary(code) << render_audit(code, r);
    return r.pass() ? kOk : kVerifyFailed;
}

// --- lattice -----------------------------------------------------------------

int cmd_lattice(unsigned k, unsigned m, unsigned node, const std::string& format,
                const std::string& out) {
    if (k < 1) throw ExitError(kConfig, "k must be at least 1");
    if (m < 2) throw ExitError(kConfig, "m must be at least 2");
    // The 2-parity code lives on k+1 axes, the m-parity code on k.
    const unsigned L = m == 2 ? k + 1 : k;
    if (node < 1 || node > L) throw ExitError(kConfig, "--node must be in 1.." + std::to_string(L));
    if (ipow(m, L) > 4096) throw ExitError(kConfig, "lattice too large to dump");

    std::vector<NamedSet> sets;
    const LatticeSet V = LatticeSet::axis_slice(m, L, node);
    const std::string vname = "V_" + std::to_string(node);
    sets.push_back({vname, V});
    std::ostringstream ranks;
    for (unsigned j = 1; j <= L; ++j) {
        std::vector<LatticeSet> levels{V};
        for (unsigned l = 1; l < m; ++l) {
            levels.push_back(lattice_shift(V, j, l));
            const std::string pw = l == 1 ? "" : "^" + std::to_string(l);
            sets.push_back({"X_" + std::to_string(j) + pw + vname, levels.back()});
        }
        ranks << "# rank " << vname << " with shifts along axis " << j << ": " << predicted_rank(levels) << "\n";
    }

    std::ostringstream os;
    if (format == "dot") {
        write_dot(os, sets, node);
    } else {
        for (const auto& s : sets) {
            os << "# " << s.name << " (" << s.set.size() << " points)\n";
            write_csv(os, s.set);
        }
        os << ranks.str();
    }
    if (out.empty())
        std::cout << os.str();
    else
        write_text(out, os.str());
    return kOk;
}

// --- bench -------------------------------------------------------------------

int cmd_bench(const Globals& g, unsigned stripes) {
    const AnyCode code = load_descriptor(g);
    const unsigned k = code_k(code), p = code_parities(code);
    const std::size_t N = code_N(code);
    const DiagonalCode gen = code_generator(code);
    std::mt19937_64 rng(resolve_seed(g));
    std::vector<Vector> files(stripes, Vector(k * N));
    for (auto& f : files)
        for (auto& v : f) v = static_cast<Elem>(rng() % code_field(code).q());

    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    std::vector<std::vector<NodeContents>> encoded;
    for (const auto& f : files) encoded.push_back(encode(gen, f));
    const double enc = std::chrono::duration<double>(clock::now() - t0).count();
    std::cout << "encode: " << stripes << " stripes in " << enc * 1e3 << " ms\n";
    for (unsigned flat = 1; flat <= k + p; ++flat) {
        const NodeId failed = NodeId::from_flat(flat, k, p);
        t0 = clock::now();
        const RepairPlan plan = plan_repair(code, failed);
        const double plan_s = std::chrono::duration<double>(clock::now() - t0).count();
        t0 = clock::now();
        std::size_t gamma = 0;
        for (const auto& nodes : encoded) {
            std::vector<NodeContents> surv;
            for (const auto& nd : nodes)
                if (nd.id != failed) surv.push_back(nd);
            const auto t = execute_repair(plan, surv);
            if (t.recovered != nodes[flat - 1].data) throw ExitError(kInternal, "bench repair mismatch");
            gamma = t.gamma;
        }
        const double run = std::chrono::duration<double>(clock::now() - t0).count();
        std::cout << "repair node " << flat << ": gamma " << gamma << "/" << k * N << ", plan " << plan_s * 1e3
                  << " ms, " << run * 1e3 / stripes << " ms/stripe\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hadamard-design MDS storage codes: generate, encode, repair, decode, verify"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--descriptor", g.descriptor, "Code descriptor JSON");
    app.add_option("--seed", g.seed, "Seed for lambda sampling and bench data (fallback: HMSR_SEED)");
    app.add_option("--emit-transcript", g.transcript, "Write the repair transcript JSON here");
    app.add_flag("--quiet", g.quiet, "Suppress informational output");

    unsigned k = 0, m = 2, node = 0, stripes = 64;
    std::optional<std::uint32_t> q;
    std::string in, out, dir, format = "csv";

    auto* gen = app.add_subcommand("gen", "Generate a code descriptor");
    gen->add_option("--k", k, "Number of systematic nodes")->required();
    gen->add_option("--m", m, "Number of parities (2 selects the optimal two-parity code)");
    gen->add_option("--q", q, "Field modulus (default: smallest admissible prime)");
    gen->add_option("--out", out, "Output path (default: --descriptor, else stdout)");

    auto* enc = app.add_subcommand("encode", "Encode a file into node chunks");
    enc->add_option("--in", in, "Input file")->required();
    enc->add_option("--out", dir, "Output directory")->required();

    auto* rep = app.add_subcommand("repair", "Rebuild one missing node chunk");
    rep->add_option("--dir", dir, "Chunk directory")->required();
    rep->add_option("--node", node, "Failed node (flat id; default: the missing chunk)");
    rep->add_option("--out", out, "Where to write the rebuilt chunk (default: into --dir)");

    auto* dec = app.add_subcommand("decode", "Reassemble the file from any k chunks");
    dec->add_option("--dir", dir, "Chunk directory")->required();
    dec->add_option("--out", out, "Output file")->required();

    auto* ver = app.add_subcommand("verify", "Audit a descriptor");

    auto* lat = app.add_subcommand("lattice", "Dump lattice point sets for a repair subspace");
    lat->add_option("--k", k, "Number of systematic nodes")->required();
    lat->add_option("--m", m, "Lattice modulus");
    lat->add_option("--node", node, "Axis i of V_i")->required();
    lat->add_option("--format", format, "csv or dot")->check(CLI::IsMember({"csv", "dot"}));
    lat->add_option("--out", out, "Output path (default: stdout)");

    auto* bench = app.add_subcommand("bench", "Time encode and every single-node repair");
    bench->add_option("--stripes", stripes, "Random stripes to process");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    try {
        if (*gen) return cmd_gen(g, k, m, q, out);
        if (*enc) return cmd_encode(g, in, dir);
        if (*rep) return cmd_repair(g, dir, node, out);
        if (*dec) return cmd_decode(g, dir, out);
        if (*ver) return cmd_verify(g);
        if (*lat) return cmd_lattice(k, m, node, format, out);
        if (*bench) return cmd_bench(g, stripes);
    } catch (const ExitError& e) {
        std::cerr << "hmsr: " << e.what() << "\n";
        return e.code;
    } catch (const Error& e) {
        std::cerr << "hmsr: " << e.what() << "\n";
        return e.kind() == ErrorKind::format || e.kind() == ErrorKind::size ? kInput : kInternal;
    } catch (const std::exception& e) {
        std::cerr << "hmsr: " << e.what() << "\n";
        return kInternal;
    }
    return kConfig;
}

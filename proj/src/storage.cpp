/**************************************************************************
 * storage.cpp
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

#include "hmsr/storage.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>

#include "json.hpp"

namespace hmsr {

namespace {

void put16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int s = 0; s < 32; s += 8) out.push_back(static_cast<std::uint8_t>((v >> s) & 0xff));
}

std::uint16_t get16(std::span<const std::uint8_t> b, std::size_t at) {
    return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t get32(std::span<const std::uint8_t> b, std::size_t at) {
    std::uint32_t v = 0;
    for (int s = 0; s < 4; ++s) v |= static_cast<std::uint32_t>(b[at + s]) << (8 * s);
    return v;
}

}  // namespace

std::vector<std::uint8_t> serialize_chunk(const ChunkRecord& rec) {
    if (rec.symbols.size() != rec.header.N) throw Error(ErrorKind::size, "chunk holds the wrong number of symbols");
    std::vector<std::uint8_t> out(std::begin(kChunkMagic), std::end(kChunkMagic));
    put16(out, kChunkVersion);
    put16(out, rec.header.q);
    put16(out, rec.header.node);
    put32(out, rec.header.N);
    put32(out, static_cast<std::uint32_t>(2 * rec.header.N));
    for (Elem s : rec.symbols) {
        if (s >= rec.header.q) throw Error(ErrorKind::domain, "symbol outside the field");
        put16(out, static_cast<std::uint16_t>(s));
    }
    return out;
}

std::vector<ChunkRecord> parse_chunks(std::span<const std::uint8_t> bytes) {
    std::vector<ChunkRecord> out;
    std::size_t at = 0;
    while (at < bytes.size()) {
        auto fail = [&](const std::string& why) {
            throw Error(ErrorKind::format, "chunk record at offset " + std::to_string(at) + ": " + why);
        };
        if (bytes.size() - at < kChunkHeaderSize) fail("truncated header");
        if (std::memcmp(bytes.data() + at, kChunkMagic, 4) != 0) fail("bad magic");
        if (get16(bytes, at + 4) != kChunkVersion) fail("unsupported version");
        ChunkRecord rec;
        rec.header.q = get16(bytes, at + 6);
        rec.header.node = get16(bytes, at + 8);
        rec.header.N = get32(bytes, at + 10);
        rec.header.payload_length = get32(bytes, at + 14);
        if (rec.header.payload_length != 2ull * rec.header.N) fail("payload length is not 2N");
        if (bytes.size() - at - kChunkHeaderSize < rec.header.payload_length) fail("truncated payload");
        rec.symbols.resize(rec.header.N);
        for (std::size_t t = 0; t < rec.header.N; ++t) {
            rec.symbols[t] = get16(bytes, at + kChunkHeaderSize + 2 * t);
            if (rec.symbols[t] >= rec.header.q) fail("symbol " + std::to_string(t) + " is not below q");
        }
        at += kChunkHeaderSize + rec.header.payload_length;
        out.push_back(std::move(rec));
    }
    return out;
}

Packing packing_for(std::uint32_t q) {
    if (q >= 257) return {q, 1, 1};
    unsigned s = 0;
    for (std::uint64_t span = 1; span < (1u << 16); span *= q) ++s;
    return {q, 2, s};
}

Vector pack_bytes(std::span<const std::uint8_t> bytes, const Packing& p) {
    Vector out;
    const std::size_t groups = (bytes.size() + p.bytes_per_group - 1) / p.bytes_per_group;
    out.reserve(groups * p.symbols_per_group);
    for (std::size_t g = 0; g < groups; ++g) {
        std::uint32_t v = 0;
        for (unsigned b = 0; b < p.bytes_per_group; ++b) {
            const std::size_t at = g * p.bytes_per_group + b;
            if (at < bytes.size()) v |= static_cast<std::uint32_t>(bytes[at]) << (8 * b);
        }
        for (unsigned d = 0; d < p.symbols_per_group; ++d) {
            out.push_back(v % p.q);
            v /= p.q;
        }
    }
    return out;
}

std::vector<std::uint8_t> unpack_symbols(std::span<const Elem> symbols, const Packing& p, std::size_t length) {
    const std::size_t groups = (length + p.bytes_per_group - 1) / p.bytes_per_group;
    if (symbols.size() < groups * p.symbols_per_group) throw Error(ErrorKind::format, "too few symbols to unpack");
    const std::uint64_t limit = std::uint64_t{1} << (8 * p.bytes_per_group);
    std::vector<std::uint8_t> out;
    out.reserve(groups * p.bytes_per_group);
    for (std::size_t g = 0; g < groups; ++g) {
        std::uint64_t v = 0;
        for (unsigned d = p.symbols_per_group; d-- > 0;) v = v * p.q + symbols[g * p.symbols_per_group + d];
        if (v >= limit) throw Error(ErrorKind::format, "symbol group does not encode a byte group");
        for (unsigned b = 0; b < p.bytes_per_group; ++b) out.push_back(static_cast<std::uint8_t>((v >> (8 * b)) & 0xff));
    }
    out.resize(length);
    return out;
}

std::string manifest_to_json(const Manifest& m) {
    nlohmann::ordered_json j;
    j["descriptor_hash"] = m.descriptor_hash;
    j["original_length"] = m.original_length;
    j["stripes"] = m.stripes;
    j["k"] = m.k;
    j["n"] = m.n;
    j["N"] = m.N;
    j["packing"] = {{"q", m.packing.q},
                    {"bytes_per_group", m.packing.bytes_per_group},
                    {"symbols_per_group", m.packing.symbols_per_group}};
    return j.dump(2) + "\n";
}

Manifest manifest_from_json(const std::string& text) {
    try {
        const auto j = nlohmann::json::parse(text);
        Manifest m;
        m.descriptor_hash = j.at("descriptor_hash").get<std::string>();
        m.original_length = j.at("original_length").get<std::uint64_t>();
        m.stripes = j.at("stripes").get<std::uint64_t>();
        m.k = j.at("k").get<unsigned>();
        m.n = j.at("n").get<unsigned>();
        m.N = j.at("N").get<std::uint32_t>();
        const auto& p = j.at("packing");
        m.packing = {p.at("q").get<std::uint32_t>(), p.at("bytes_per_group").get<unsigned>(),
                     p.at("symbols_per_group").get<unsigned>()};
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::format, std::string("bad manifest: ") + e.what());
    }
}

EncodedFile encode_file(const AnyCode& code, std::span<const std::uint8_t> bytes) {
    const PrimeField& f = code_field(code);
    const unsigned k = code_k(code);
    const unsigned n = k + code_parities(code);
    const std::size_t N = code_N(code);
    const DiagonalCode g = code_generator(code);

    EncodedFile out;
    out.manifest.descriptor_hash = hash_hex(descriptor_hash(code));
    out.manifest.original_length = bytes.size();
    out.manifest.packing = packing_for(f.q());
    out.manifest.k = k;
    out.manifest.n = n;
    out.manifest.N = static_cast<std::uint32_t>(N);

    Vector symbols = pack_bytes(bytes, out.manifest.packing);
    const std::size_t stripe = k * N;
    const std::size_t stripes = std::max<std::size_t>(1, (symbols.size() + stripe - 1) / stripe);
    symbols.resize(stripes * stripe, 0);
    out.manifest.stripes = stripes;

    out.nodes.assign(n, {});
    for (std::size_t s = 0; s < stripes; ++s) {
        const auto nodes = encode(g, std::span<const Elem>(symbols).subspan(s * stripe, stripe));
        for (const auto& node : nodes) {
            const unsigned flat = node.id.flat(k);
            ChunkHeader h{static_cast<std::uint16_t>(f.q()), static_cast<std::uint16_t>(flat),
                          static_cast<std::uint32_t>(N), static_cast<std::uint32_t>(2 * N)};
            out.nodes[flat - 1].push_back({h, node.data});
        }
    }
    return out;
}

std::vector<std::uint8_t> decode_file(const AnyCode& code, const Manifest& m,
                                      const std::vector<std::vector<ChunkRecord>>& nodes) {
    const unsigned k = code_k(code);
    const unsigned p = code_parities(code);
    const DiagonalCode g = code_generator(code);
    std::vector<unsigned> chosen;
    for (unsigned flat = 1; flat <= nodes.size() && chosen.size() < k; ++flat)
        if (!nodes[flat - 1].empty()) chosen.push_back(flat);
    if (chosen.size() < k) throw Error(ErrorKind::domain, "fewer than k nodes available");

    Vector symbols;
    for (std::size_t s = 0; s < m.stripes; ++s) {
        std::vector<NodeContents> dc;
        for (unsigned flat : chosen) {
            if (nodes[flat - 1].size() != m.stripes)
                throw Error(ErrorKind::format, "node " + std::to_string(flat) + " has the wrong stripe count");
            dc.push_back({NodeId::from_flat(flat, k, p), nodes[flat - 1][s].symbols});
        }
        const Vector f = decode_dc(g, dc);
        symbols.insert(symbols.end(), f.begin(), f.end());
    }
    return unpack_symbols(symbols, m.packing, m.original_length);
}

std::string chunk_file_name(unsigned flat) { return "node_" + std::to_string(flat) + ".hmsr"; }

std::vector<std::uint8_t> read_binary(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(ErrorKind::domain, "cannot read " + p.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_binary(const std::filesystem::path& p, std::span<const std::uint8_t> bytes) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::domain, "cannot write " + p.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorKind::domain, "short write to " + p.string());
}

std::string read_text(const std::filesystem::path& p) {
    const auto b = read_binary(p);
    return {b.begin(), b.end()};
}

void write_text(const std::filesystem::path& p, const std::string& text) {
    write_binary(p, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace hmsr

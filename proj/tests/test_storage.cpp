/**************************************************************************
 * test_storage.cpp
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hmsr/descriptor.hpp"
#include "hmsr/storage.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace hmsr;
using testsupport::kind_of;

namespace {

std::vector<std::uint8_t> random_bytes(std::size_t n, std::mt19937_64& rng) {
    std::vector<std::uint8_t> out(n);
    for (auto& b : out) b = static_cast<std::uint8_t>(rng());
    return out;
}

}  // namespace

TEST_CASE("two-parity descriptor json") {
    const AnyCode code = build_code2(3, PrimeField(11));
    const std::string text = descriptor_to_json(code);
    const auto j = nlohmann::json::parse(text);
    CHECK(j["kind"] == "hadamard-2parity");
    CHECK(j["k"] == 3);
    CHECK(j["q"] == 11);
    CHECK(j["N"] == 16);
    CHECK(j["a"] == nlohmann::json::array({9, 5, 9}));
    CHECK(j["b"] == nlohmann::json::array({7, 2, 4}));
    CHECK(j["x"] == nlohmann::json::array({2, 3, 5}));
    CHECK(text.find("\"kind\"") < text.find("\"k\""));
    CHECK(text.back() == '\n');

    const AnyCode back = descriptor_from_json(text);
    CHECK(descriptor_to_json(back) == text);
    CHECK(descriptor_hash(back) == descriptor_hash(code));
    CHECK(hash_hex(descriptor_hash(code)).size() == 16);
}

TEST_CASE("m-parity descriptor json") {
    const AnyCode code = build_code_m(3, 3, PrimeField(13), 9);
    const std::string text = descriptor_to_json(code);
    const auto j = nlohmann::json::parse(text);
    CHECK(j["kind"] == "hadamard-mparity");
    CHECK(j["m"] == 3);
    CHECK(j["seed"] == 9);
    CHECK(j["lambda"].size() == 2);
    const AnyCode back = descriptor_from_json(text);
    CHECK(std::get<CodeDescriptorM>(back).lambda == std::get<CodeDescriptorM>(code).lambda);
    CHECK(descriptor_to_json(back) == text);
    CHECK(code_parities(back) == 3);
    CHECK(code_N(back) == 27);
}

TEST_CASE("descriptor hash tracks content") {
    const AnyCode a = build_code2(3, PrimeField(11));
    CodeDescriptor2 tweaked = std::get<CodeDescriptor2>(a);
    tweaked.b[2] = 5;
    CHECK(descriptor_hash(a) != descriptor_hash(AnyCode{tweaked}));
}

TEST_CASE("malformed descriptors") {
    CHECK(kind_of([] { descriptor_from_json("{not json"); }) == ErrorKind::format);
    CHECK(kind_of([] { descriptor_from_json(R"({"kind":"hadamard-2parity","k":3})"); }) ==
          ErrorKind::invalid_descriptor);
    CHECK(kind_of([] { descriptor_from_json(R"({"kind":"reed-solomon"})"); }) == ErrorKind::invalid_descriptor);
    CHECK(kind_of([] {
              descriptor_from_json(
                  R"({"kind":"hadamard-2parity","k":3,"q":11,"N":8,"x":[2,3,5],"a":[9,5,9],"b":[7,2,4]})");
          }) == ErrorKind::invalid_descriptor);
    CHECK(kind_of([] {
              descriptor_from_json(
                  R"({"kind":"hadamard-2parity","k":3,"q":9,"N":16,"x":[2,3,5],"a":[9,5,9],"b":[7,2,4]})");
          }) == ErrorKind::invalid_descriptor);
    CHECK(kind_of([] {
              descriptor_from_json(
                  R"({"kind":"hadamard-2parity","k":"3","q":11,"N":16,"x":[2,3,5],"a":[9,5,9],"b":[7,2,4]})");
          }) == ErrorKind::invalid_descriptor);
}

TEST_CASE("bandwidth targets") {
    const AnyCode c2 = build_code2(3, PrimeField(11));
    CHECK(target_bandwidth(c2, NodeId::parity(2)) == 32u);
    const AnyCode cm = build_code_m(3, 3, PrimeField(13), 1);
    CHECK(target_bandwidth(cm, NodeId::systematic(1)) == 45u);
    CHECK(target_bandwidth(cm, NodeId::parity(1)) == std::nullopt);
}

TEST_CASE("chunk record layout") {
    const ChunkRecord rec{{11, 5, 2, 4}, {3, 10}};
    const auto bytes = serialize_chunk(rec);
    const std::vector<std::uint8_t> expect{'H', 'M', 'S', 'R', 1, 0, 11, 0, 5, 0, 2, 0, 0, 0, 4, 0, 0, 0, 3, 0, 10, 0};
    CHECK(bytes == expect);
    const auto parsed = parse_chunks(bytes);
    REQUIRE(parsed.size() == 1);
    CHECK(parsed[0].symbols == rec.symbols);
    CHECK(parsed[0].header.node == 5);

    auto two = bytes;
    two.insert(two.end(), bytes.begin(), bytes.end());
    CHECK(parse_chunks(two).size() == 2);
}

TEST_CASE("corrupt chunks are rejected") {
    const auto good = serialize_chunk({{11, 1, 2, 4}, {3, 10}});
    auto bad = good;
    bad[0] = 'X';
    CHECK(kind_of([&] { parse_chunks(bad); }) == ErrorKind::format);
    bad = good;
    bad[4] = 2;
    CHECK(kind_of([&] { parse_chunks(bad); }) == ErrorKind::format);
    bad = good;
    bad.pop_back();
    CHECK(kind_of([&] { parse_chunks(bad); }) == ErrorKind::format);
    bad = good;
    bad[18] = 11;  // symbol equal to q
    CHECK(kind_of([&] { parse_chunks(bad); }) == ErrorKind::format);
    bad = good;
    bad[14] = 6;  // payload length disagrees with N
    CHECK(kind_of([&] { parse_chunks(bad); }) == ErrorKind::format);
}

TEST_CASE("byte packing") {
    const Packing small = packing_for(11);
    CHECK(small.bytes_per_group == 2);
    CHECK(small.symbols_per_group == 5);
    const Packing wide = packing_for(257);
    CHECK(wide.bytes_per_group == 1);
    CHECK(wide.symbols_per_group == 1);
    CHECK(pack_bytes(std::vector<std::uint8_t>{0x01, 0x00}, small) == Vector{1, 0, 0, 0, 0});
    CHECK(pack_bytes(std::vector<std::uint8_t>{0xff}, wide) == Vector{255});

    std::mt19937_64 rng(6);
    for (std::uint32_t q : {3u, 7u, 11u, 13u, 257u, 65521u}) {
        const Packing p = packing_for(q);
        for (std::size_t n : {0u, 1u, 2u, 3u, 97u}) {
            const auto bytes = random_bytes(n, rng);
            const Vector sym = pack_bytes(bytes, p);
            for (Elem s : sym) CHECK(s < q);
            CHECK(unpack_symbols(sym, p, n) == bytes);
        }
    }
    CHECK(kind_of([&] { unpack_symbols(Vector{10, 10, 10, 10, 10}, small, 2); }) == ErrorKind::format);
}

TEST_CASE("manifest round trip") {
    const Manifest m{"0123456789abcdef", 4096, 214, packing_for(11), 3, 5, 16};
    const Manifest back = manifest_from_json(manifest_to_json(m));
    CHECK(back.descriptor_hash == m.descriptor_hash);
    CHECK(back.original_length == 4096);
    CHECK(back.stripes == 214);
    CHECK(back.packing.symbols_per_group == 5);
    CHECK(back.n == 5);
    CHECK(kind_of([] { manifest_from_json("[]"); }) == ErrorKind::format);
}

TEST_CASE("one stripe is five sixteen-symbol chunks") {
    const AnyCode code = build_code2(3, PrimeField(11));
    // 18 bytes pack into 45 symbols, which fit one 48-symbol stripe.
    std::mt19937_64 rng(1);
    const auto bytes = random_bytes(18, rng);
    const EncodedFile ef = encode_file(code, bytes);
    CHECK(ef.manifest.stripes == 1);
    REQUIRE(ef.nodes.size() == 5);
    for (const auto& node : ef.nodes) {
        REQUIRE(node.size() == 1);
        CHECK(node[0].symbols.size() == 16);
        CHECK(node[0].header.N == 16);
    }
}

TEST_CASE("zero input gives zero payloads") {
    const AnyCode code = build_code2(2, PrimeField(7));
    const EncodedFile ef = encode_file(code, std::vector<std::uint8_t>(100, 0));
    for (const auto& node : ef.nodes)
        for (const auto& rec : node) CHECK(rec.symbols == Vector(rec.symbols.size(), 0));
}

TEST_CASE("file round trip through any k surviving nodes") {
    std::mt19937_64 rng(15);
    for (const AnyCode& code : {AnyCode{build_code2(3, PrimeField(11))}, AnyCode{build_code_m(2, 3, PrimeField(13), 1)},
                                AnyCode{build_code2(2, PrimeField(257))}}) {
        const auto bytes = random_bytes(1000, rng);
        const EncodedFile ef = encode_file(code, bytes);
        const EncodedFile again = encode_file(code, bytes);
        for (std::size_t n = 0; n < ef.nodes.size(); ++n)
            for (std::size_t s = 0; s < ef.nodes[n].size(); ++s)
                CHECK(serialize_chunk(ef.nodes[n][s]) == serialize_chunk(again.nodes[n][s]));
        const unsigned k = code_k(code);
        for (const auto& subset : dc_subsets(k, code_parities(code))) {
            std::vector<std::vector<ChunkRecord>> nodes(ef.nodes.size());
            for (const auto& id : subset) nodes[id.flat(k) - 1] = ef.nodes[id.flat(k) - 1];
            CHECK(decode_file(code, ef.manifest, nodes) == bytes);
        }
    }
}

TEST_CASE("chunk file names") {
    CHECK(chunk_file_name(3) == "node_3.hmsr");
    CHECK(std::string(kManifestName) == "manifest.json");
}

/**************************************************************************
 * storage.hpp
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

/*
 * On-disk formats.
 *
 * Chunk record (little-endian), one per node per stripe:
 *
 *     offset  size  field
 *     0       4     magic "HMSR"
 *     4       2     format version (1)
 *     6       2     q
 *     8       2     node id, flat 1-based
 *     10      4     N
 *     14      4     payload length in octets (2N)
 *     18      2N    N symbols, 2 octets each, every value < q
 *
 * A node file is the concatenation of its records for stripes 0, 1, ...
 *
 * Bytes become symbols by packing: for q >= 257 each byte is one symbol;
 * otherwise every 2 bytes (a little-endian 16-bit value) become s base-q
 * digits, least significant first, with s the smallest integer such that
 * q^s >= 2^16.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hmsr/descriptor.hpp"

namespace hmsr {

inline constexpr char kChunkMagic[4] = {'H', 'M', 'S', 'R'};
inline constexpr std::uint16_t kChunkVersion = 1;
inline constexpr std::size_t kChunkHeaderSize = 18;

struct ChunkHeader {
    std::uint16_t q = 0;
    std::uint16_t node = 0;
    std::uint32_t N = 0;
    std::uint32_t payload_length = 0;
};

struct ChunkRecord {
    ChunkHeader header;
    Vector symbols;
};

std::vector<std::uint8_t> serialize_chunk(const ChunkRecord& rec);
/// Parses consecutive records. Throws ErrorKind::format on bad magic,
/// version, truncated data, payload length != 2N, or symbols >= q.
std::vector<ChunkRecord> parse_chunks(std::span<const std::uint8_t> bytes);

struct Packing {
    std::uint32_t q = 0;
    unsigned bytes_per_group = 1;
    unsigned symbols_per_group = 1;
};

Packing packing_for(std::uint32_t q);
Vector pack_bytes(std::span<const std::uint8_t> bytes, const Packing& p);
/// Inverse of pack_bytes; `length` is the original byte count.
/// Throws ErrorKind::format when the digits do not form valid groups.
std::vector<std::uint8_t> unpack_symbols(std::span<const Elem> symbols, const Packing& p, std::size_t length);

struct Manifest {
    std::string descriptor_hash;
    std::uint64_t original_length = 0;
    std::uint64_t stripes = 0;
    Packing packing;
    unsigned k = 0;
    unsigned n = 0;
    std::uint32_t N = 0;
};

std::string manifest_to_json(const Manifest& m);
Manifest manifest_from_json(const std::string& text);

/// Encoded file: per-node records for every stripe, plus its manifest.
struct EncodedFile {
    Manifest manifest;
    std::vector<std::vector<ChunkRecord>> nodes;  // [flat - 1][stripe]
};

EncodedFile encode_file(const AnyCode& code, std::span<const std::uint8_t> bytes);
/// Decodes from the first k entries of `nodes` that hold data.
std::vector<std::uint8_t> decode_file(const AnyCode& code, const Manifest& m,
                                      const std::vector<std::vector<ChunkRecord>>& nodes);

std::string chunk_file_name(unsigned flat);
inline constexpr const char* kManifestName = "manifest.json";

std::vector<std::uint8_t> read_binary(const std::filesystem::path& p);
void write_binary(const std::filesystem::path& p, std::span<const std::uint8_t> bytes);
std::string read_text(const std::filesystem::path& p);
void write_text(const std::filesystem::path& p, const std::string& text);

}  // namespace hmsr

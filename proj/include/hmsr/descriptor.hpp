/**************************************************************************
 * descriptor.hpp
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
 * Code descriptors as canonical JSON, and a small variant over both code
 * families so callers can encode, decode and repair without caring which
 * one they hold.
 *
 *   {"kind":"hadamard-2parity","k":3,"q":11,"N":16,"x":[..],"a":[..],"b":[..]}
 *   {"kind":"hadamard-mparity","k":3,"m":3,"q":13,"N":27,"seed":1,"lambda":[[..],..]}
 */

#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "hmsr/code2.hpp"
#include "hmsr/mparity.hpp"
#include "hmsr/repair.hpp"

namespace hmsr {

using AnyCode = std::variant<CodeDescriptor2, CodeDescriptorM>;

/// Canonical text: fixed key order, two-space indentation, trailing newline.
std::string descriptor_to_json(const AnyCode& code);
/// Throws ErrorKind::format on malformed JSON and ErrorKind::invalid_descriptor
/// when fields are missing or structurally inconsistent.
AnyCode descriptor_from_json(const std::string& text);

/// FNV-1a 64 over the compact canonical JSON.
std::uint64_t descriptor_hash(const AnyCode& code);
std::string hash_hex(std::uint64_t h);

const PrimeField& code_field(const AnyCode& code);
unsigned code_k(const AnyCode& code);
unsigned code_parities(const AnyCode& code);
std::size_t code_N(const AnyCode& code);
DiagonalCode code_generator(const AnyCode& code);

std::vector<NodeContents> encode(const AnyCode& code, std::span<const Elem> f);
Vector decode_dc(const AnyCode& code, const std::vector<NodeContents>& nodes);
RepairPlan plan_repair(const AnyCode& code, NodeId failed);

/// The bandwidth a repair of `node` should achieve: the cut-set optimum for
/// the 2-parity code, (n-1) m^{k-1} for m-parity systematic nodes, and
/// nothing for m-parity parities.
std::optional<std::size_t> target_bandwidth(const AnyCode& code, NodeId node);

}  // namespace hmsr

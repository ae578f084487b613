/**************************************************************************
 * descriptor.cpp
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

#include "hmsr/descriptor.hpp"

#include <cstdio>

#include "hmsr/repair2.hpp"
#include "json.hpp"

namespace hmsr {

namespace {

using ojson = nlohmann::ordered_json;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

ojson to_ojson(const AnyCode& code) {
    return std::visit(overloaded{
                          [](const CodeDescriptor2& c) {
                              ojson j;
                              j["kind"] = "hadamard-2parity";
                              j["k"] = c.k;
                              j["q"] = c.field.q();
                              j["N"] = c.N;
                              j["x"] = c.x;
                              j["a"] = c.a;
                              j["b"] = c.b;
                              return j;
                          },
                          [](const CodeDescriptorM& c) {
                              ojson j;
                              j["kind"] = "hadamard-mparity";
                              j["k"] = c.k;
                              j["m"] = c.m;
                              j["q"] = c.field.q();
                              j["N"] = c.N;
                              j["seed"] = c.seed;
                              j["lambda"] = c.lambda;
                              return j;
                          },
                      },
                      code);
}

template <class T>
T field_of(const ojson& j, const char* key) {
    if (!j.contains(key)) throw Error(ErrorKind::invalid_descriptor, std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw Error(ErrorKind::invalid_descriptor, std::string("field \"") + key + "\" has the wrong type");
    }
}

PrimeField field_from(const ojson& j) {
    const auto q = field_of<std::uint64_t>(j, "q");
    if (q >= kMaxModulus || !is_prime(static_cast<std::uint32_t>(q)) || q == 2)
        throw Error(ErrorKind::invalid_descriptor, "q = " + std::to_string(q) + " is not an odd prime below 65536");
    return PrimeField(static_cast<std::uint32_t>(q));
}

void check_N(const ojson& j, std::size_t expected) {
    if (field_of<std::uint64_t>(j, "N") != expected)
        throw Error(ErrorKind::invalid_descriptor, "N does not match k and m");
}

}  // namespace

std::string descriptor_to_json(const AnyCode& code) { return to_ojson(code).dump(2) + "\n"; }

AnyCode descriptor_from_json(const std::string& text) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::format, std::string("descriptor is not JSON: ") + e.what());
    }
    if (!j.is_object()) throw Error(ErrorKind::invalid_descriptor, "descriptor must be a JSON object");
    const auto kind = field_of<std::string>(j, "kind");
    const auto k = field_of<unsigned>(j, "k");
    const PrimeField f = field_from(j);
    if (kind == "hadamard-2parity") {
        auto code = make_code2(k, f, field_of<std::vector<Elem>>(j, "x"), field_of<std::vector<Elem>>(j, "a"),
                               field_of<std::vector<Elem>>(j, "b"));
        check_N(j, code.N);
        return code;
    }
    if (kind == "hadamard-mparity") {
        const auto m = field_of<unsigned>(j, "m");
        auto code = make_code_m(k, m, f, field_of<std::uint64_t>(j, "seed"),
                                field_of<std::vector<std::vector<Elem>>>(j, "lambda"));
        check_N(j, code.N);
        return code;
    }
    throw Error(ErrorKind::invalid_descriptor, "unknown descriptor kind \"" + kind + "\"");
}

std::uint64_t descriptor_hash(const AnyCode& code) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : to_ojson(code).dump()) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

const PrimeField& code_field(const AnyCode& code) {
    return std::visit([](const auto& c) -> const PrimeField& { return c.field; }, code);
}

unsigned code_k(const AnyCode& code) {
    return std::visit([](const auto& c) { return c.k; }, code);
}

unsigned code_parities(const AnyCode& code) {
    return std::visit(overloaded{[](const CodeDescriptor2&) { return 2u; }, [](const CodeDescriptorM& c) { return c.m; }},
                      code);
}

std::size_t code_N(const AnyCode& code) {
    return std::visit([](const auto& c) { return c.N; }, code);
}

DiagonalCode code_generator(const AnyCode& code) {
    return std::visit([](const auto& c) { return c.generator(); }, code);
}

std::vector<NodeContents> encode(const AnyCode& code, std::span<const Elem> f) {
    return encode(code_generator(code), f);
}

Vector decode_dc(const AnyCode& code, const std::vector<NodeContents>& nodes) {
    return decode_dc(code_generator(code), nodes);
}

RepairPlan plan_repair(const AnyCode& code, NodeId failed) {
    return std::visit([&](const auto& c) { return plan_repair(c, failed); }, code);
}

std::optional<std::size_t> target_bandwidth(const AnyCode& code, NodeId node) {
    return std::visit(overloaded{[](const CodeDescriptor2& c) -> std::optional<std::size_t> {
                                     return c.optimal_repair_bandwidth();
                                 },
                                 [&](const CodeDescriptorM& c) -> std::optional<std::size_t> {
                                     if (node.is_parity()) return std::nullopt;
                                     return c.systematic_repair_bandwidth();
                                 }},
                      code);
}

}  // namespace hmsr

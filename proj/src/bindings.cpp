/**************************************************************************
 * bindings.cpp
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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>

#include "hmsr/audit.hpp"
#include "hmsr/descriptor.hpp"
#include "hmsr/permequiv.hpp"
#include "hmsr/storage.hpp"

namespace py = pybind11;
using namespace hmsr;

namespace {

const char* kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::domain: return "domain";
        case ErrorKind::unsupported_field: return "unsupported_field";
        case ErrorKind::degenerate_field: return "degenerate_field";
        case ErrorKind::insufficient_field: return "insufficient_field";
        case ErrorKind::singular: return "singular";
        case ErrorKind::non_mds: return "non_mds";
        case ErrorKind::construction: return "construction";
        case ErrorKind::invalid_descriptor: return "invalid_descriptor";
        case ErrorKind::size: return "size";
        case ErrorKind::format: return "format";
    }
    return "unknown";
}

struct Code {
    AnyCode code;

    unsigned k() const { return code_k(code); }
    unsigned parities() const { return code_parities(code); }

    std::vector<NodeContents> nodes_from(const std::map<unsigned, Vector>& nodes) const {
        std::vector<NodeContents> out;
        for (const auto& [flat, data] : nodes) {
            if (flat < 1 || flat > k() + parities()) throw Error(ErrorKind::domain, "node id out of range");
            out.push_back({NodeId::from_flat(flat, k(), parities()), data});
        }
        return out;
    }
};

Code generate(unsigned k, unsigned m, std::optional<std::uint32_t> q, std::uint64_t seed) {
    if (m < 2) throw Error(ErrorKind::domain, "m must be at least 2");
    if (m == 2) {
        std::uint32_t modulus = q.value_or(2 * k + 3);
        if (!q)
            while (!is_prime(modulus)) ++modulus;
        return {build_code2(k, PrimeField(modulus))};
    }
    if (q) return {build_code_m(k, m, PrimeField(*q), seed)};
    return {build_code_m_auto(k, m, seed)};
}

py::dict repair_result(const Code& c, unsigned failed, const std::map<unsigned, Vector>& nodes) {
    const NodeId id = NodeId::from_flat(failed, c.k(), c.parities());
    const RepairTranscript t = execute_repair(plan_repair(c.code, id), c.nodes_from(nodes));
    py::dict per_node;
    for (const auto& tr : t.transfers) per_node[py::int_(tr.node.flat(c.k()))] = tr.symbols.size();
    py::dict out;
    out["recovered"] = t.recovered;
    out["gamma"] = t.gamma;
    out["per_node"] = per_node;
    out["transcript"] = transcript_json(t, c.k());
    return out;
}

py::tuple encode_file_py(const Code& c, const py::bytes& data) {
    const std::string raw = data;
    const EncodedFile ef = encode_file(c.code, std::vector<std::uint8_t>(raw.begin(), raw.end()));
    py::dict chunks;
    for (std::size_t n = 0; n < ef.nodes.size(); ++n) {
        std::string blob;
        for (const auto& rec : ef.nodes[n]) {
            const auto b = serialize_chunk(rec);
            blob.append(b.begin(), b.end());
        }
        chunks[py::int_(n + 1)] = py::bytes(blob);
    }
    return py::make_tuple(manifest_to_json(ef.manifest), chunks);
}

py::bytes decode_file_py(const Code& c, const std::string& manifest, const std::map<unsigned, py::bytes>& chunks) {
    const Manifest m = manifest_from_json(manifest);
    std::vector<std::vector<ChunkRecord>> nodes(c.k() + c.parities());
    for (const auto& [flat, blob] : chunks) {
        if (flat < 1 || flat > nodes.size()) throw Error(ErrorKind::domain, "node id out of range");
        const std::string raw = blob;
        nodes[flat - 1] = parse_chunks(std::vector<std::uint8_t>(raw.begin(), raw.end()));
    }
    const auto bytes = decode_file(c.code, m, nodes);
    return py::bytes(std::string(bytes.begin(), bytes.end()));
}

std::vector<std::vector<Elem>> to_rows(const Matrix& m) {
    std::vector<std::vector<Elem>> rows(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) rows[r].assign(m.row(r).begin(), m.row(r).end());
    return rows;
}

LatticeSet to_set(const std::vector<std::vector<unsigned>>& pts, unsigned m, unsigned L) {
    LatticeSet s{m, L, {}};
    for (const auto& p : pts) {
        if (p.size() != L) throw Error(ErrorKind::domain, "point has the wrong length");
        ExponentVector e{p};
        for (auto& x : e.x) x %= m;
        s.points.insert(e);
    }
    return s;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Hadamard-design MDS storage codes";

    static py::exception<Error> hmsr_error(mod, "HmsrError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            const py::object type = py::reinterpret_borrow<py::object>(hmsr_error.ptr());
            py::object exc = type(std::string(kind_name(e.kind())) + ": " + e.what());
            exc.attr("kind") = kind_name(e.kind());
            PyErr_SetObject(hmsr_error.ptr(), exc.ptr());
        }
    });

    py::class_<Code>(mod, "Code")
        .def_static("generate", &generate, py::arg("k"), py::arg("m") = 2, py::arg("q") = std::nullopt,
                    py::arg("seed") = 1, "Build a descriptor; m = 2 selects the two-parity code")
        .def_static("from_json", [](const std::string& text) { return Code{descriptor_from_json(text)}; })
        .def("to_json", [](const Code& c) { return descriptor_to_json(c.code); })
        .def_property_readonly("hash", [](const Code& c) { return hash_hex(descriptor_hash(c.code)); })
        .def_property_readonly("kind", [](const Code& c) {
            return std::holds_alternative<CodeDescriptor2>(c.code) ? "hadamard-2parity" : "hadamard-mparity";
        })
        .def_property_readonly("k", &Code::k)
        .def_property_readonly("parities", &Code::parities)
        .def_property_readonly("N", [](const Code& c) { return code_N(c.code); })
        .def_property_readonly("q", [](const Code& c) { return code_field(c.code).q(); })
        .def("encode",
             [](const Code& c, const Vector& f) {
                 std::map<unsigned, Vector> out;
                 for (auto& n : encode(c.code, f)) out[n.id.flat(c.k())] = std::move(n.data);
                 return out;
             },
             py::arg("data"), "Encode k*N symbols; returns {node id: symbols}")
        .def("decode", [](const Code& c, const std::map<unsigned, Vector>& nodes) {
                 return decode_dc(c.code, c.nodes_from(nodes));
             },
             py::arg("nodes"), "Recover the file from exactly k nodes")
        .def("repair_bandwidth",
             [](const Code& c, unsigned failed) {
                 return plan_repair(c.code, NodeId::from_flat(failed, c.k(), c.parities())).expected_bandwidth;
             },
             py::arg("node"))
        .def("repair", &repair_result, py::arg("node"), py::arg("survivors"),
             "Rebuild one node from the others; returns recovered symbols, gamma and per-node counts")
        .def("verify",
             [](const Code& c) {
                 const AuditReport r = audit(c.code);
                 return py::make_tuple(r.pass(), render_audit(c.code, r));
             })
        .def("encode_file", &encode_file_py, py::arg("data"),
             "Returns (manifest json, {node id: chunk file bytes})")
        .def("decode_file", &decode_file_py, py::arg("manifest"), py::arg("chunks"));

    mod.def("hadamard",
            [](unsigned m, unsigned L, std::uint32_t q) { return to_rows(hadamard(m, L, PrimeField(q)).matrix); },
            py::arg("m"), py::arg("L"), py::arg("q"));
    mod.def("x_diag", [](unsigned i, unsigned L, unsigned m, std::uint32_t q) {
        return x_diag(i, L, m, PrimeField(q)).diag;
    });
    mod.def("mat_rank",
            [](const std::vector<std::vector<Elem>>& rows, std::uint32_t q) {
                const PrimeField f(q);
                Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
                for (std::size_t r = 0; r < rows.size(); ++r) {
                    if (rows[r].size() != m.cols()) throw Error(ErrorKind::size, "ragged matrix");
                    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = f.reduce(rows[r][c]);
                }
                return mat_rank(f, m);
            },
            py::arg("rows"), py::arg("q"));
    mod.def("predicted_rank",
            [](const std::vector<std::vector<std::vector<unsigned>>>& sets, unsigned m, unsigned L) {
                std::vector<LatticeSet> ls;
                for (const auto& s : sets) ls.push_back(to_set(s, m, L));
                return predicted_rank(ls);
            },
            py::arg("sets"), py::arg("m"), py::arg("L"), "Size of the union of lattice point sets");
    mod.def("x_to_permutation",
            [](unsigned i, unsigned m, unsigned L, std::uint32_t q) {
                auto p = x_to_permutation(i, m, L, PrimeField(q)).mapping;
                for (auto& v : p) ++v;
                return p;
            },
            py::arg("i"), py::arg("m"), py::arg("L"), py::arg("q"), "1-based column order of P_i");
}

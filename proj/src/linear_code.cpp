/**************************************************************************
 * linear_code.cpp
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

#include "hmsr/linear_code.hpp"

#include <algorithm>
#include <set>

namespace hmsr {

NodeId NodeId::from_flat(unsigned flat, unsigned k, unsigned parities) {
    if (flat < 1 || flat > k + parities)
        throw Error(ErrorKind::domain, "node " + std::to_string(flat) + " outside 1.." +
                                           std::to_string(k + parities));
    return flat <= k ? systematic(flat) : parity(flat - k);
}

std::string NodeId::label() const {
    return (is_parity() ? "parity " : "systematic ") + std::to_string(index);
}

BlockCode DiagonalCode::dense() const {
    BlockCode out{field, k, N, {}};
    for (const auto& row : blocks) {
        std::vector<Matrix> dense_row;
        for (const auto& d : row) dense_row.push_back(Matrix::diagonal(d));
        out.parity_blocks.push_back(std::move(dense_row));
    }
    return out;
}

std::vector<NodeContents> encode(const DiagonalCode& code, std::span<const Elem> f) {
    if (f.size() != code.k * code.N)
        throw Error(ErrorKind::size, "file stripe has " + std::to_string(f.size()) + " symbols, expected " +
                                         std::to_string(code.k * code.N));
    std::vector<NodeContents> nodes;
    nodes.reserve(code.n());
    for (unsigned i = 0; i < code.k; ++i) {
        Vector block(f.begin() + i * code.N, f.begin() + (i + 1) * code.N);
        for (auto& v : block)
            if (!code.field.contains(v)) throw Error(ErrorKind::domain, "symbol outside the field");
        nodes.push_back({NodeId::systematic(i + 1), std::move(block)});
    }
    const PrimeField& fq = code.field;
    for (unsigned r = 0; r < code.parities(); ++r) {
        Vector acc(code.N, 0);
        for (unsigned i = 0; i < code.k; ++i) {
            const Vector& d = code.blocks[r][i];
            for (std::size_t t = 0; t < code.N; ++t) acc[t] = fq.add(acc[t], fq.mul(d[t], f[i * code.N + t]));
        }
        nodes.push_back({NodeId::parity(r + 1), std::move(acc)});
    }
    return nodes;
}

Matrix node_generator(const BlockCode& code, NodeId id) {
    const std::size_t N = code.N;
    Matrix g(N, code.k * N);
    if (!id.is_parity()) {
        if (id.index < 1 || id.index > code.k) throw Error(ErrorKind::domain, "no such systematic node");
        for (std::size_t t = 0; t < N; ++t) g(t, (id.index - 1) * N + t) = 1;
        return g;
    }
    if (id.index < 1 || id.index > code.parities()) throw Error(ErrorKind::domain, "no such parity node");
    const auto& row = code.parity_blocks[id.index - 1];
    for (unsigned i = 0; i < code.k; ++i)
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c) g(r, i * N + c) = row[i](r, c);
    return g;
}

Matrix dc_matrix(const BlockCode& code, const std::vector<NodeId>& subset) {
    Matrix m(0, code.k * code.N);
    for (const auto& id : subset) m = vconcat(m, node_generator(code, id));
    return m;
}

Vector decode_dc(const BlockCode& code, const std::vector<NodeContents>& nodes) {
    if (nodes.size() != code.k)
        throw Error(ErrorKind::domain, "a data collector needs exactly k = " + std::to_string(code.k) + " nodes");
    std::set<NodeId> seen;
    std::vector<NodeId> ids;
    Vector rhs;
    for (const auto& n : nodes) {
        if (!seen.insert(n.id).second) throw Error(ErrorKind::domain, "duplicate node " + n.id.label());
        if (n.data.size() != code.N) throw Error(ErrorKind::size, "node " + n.id.label() + " has wrong length");
        ids.push_back(n.id);
        rhs.insert(rhs.end(), n.data.begin(), n.data.end());
    }
    try {
        return mat_solve(code.field, dc_matrix(code, ids), rhs);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::singular) throw;
        throw Error(ErrorKind::non_mds, "data collector " + format_subset(ids, code.k) + " is singular");
    }
}

Vector decode_dc(const DiagonalCode& code, const std::vector<NodeContents>& nodes) {
    return decode_dc(code.dense(), nodes);
}

std::vector<std::vector<NodeId>> dc_subsets(unsigned k, unsigned parities) {
    const unsigned n = k + parities;
    std::vector<std::vector<NodeId>> out;
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + k, true);
    do {
        std::vector<NodeId> s;
        for (unsigned j = 0; j < n; ++j)
            if (pick[j]) s.push_back(NodeId::from_flat(j + 1, k, parities));
        out.push_back(std::move(s));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

MdsReport verify_mds_exhaustive(const BlockCode& code, bool stop_at_first) {
    MdsReport rep;
    const std::size_t full = code.k * code.N;
    for (const auto& subset : dc_subsets(code.k, code.parities())) {
        ++rep.subsets_checked;
        const std::size_t r = mat_rank(code.field, dc_matrix(code, subset));
        if (r == full) {
            ++rep.subsets_full_rank;
            continue;
        }
        if (rep.pass) {
            rep.pass = false;
            rep.first_failure = subset;
            rep.first_failure_rank = r;
        }
        if (stop_at_first) break;
    }
    return rep;
}

bool diagonal_mds_screen(const DiagonalCode& code) {
    // With diagonal blocks the DC matrix is a permuted direct sum over the N
    // coordinates of k x k systems; only the parity rows over the missing
    // systematic columns matter.
    const PrimeField& f = code.field;
    for (const auto& subset : dc_subsets(code.k, code.parities())) {
        std::vector<unsigned> rows, cols;
        std::vector<bool> present(code.k, false);
        for (const auto& id : subset) {
            if (id.is_parity())
                rows.push_back(id.index - 1);
            else
                present[id.index - 1] = true;
        }
        for (unsigned i = 0; i < code.k; ++i)
            if (!present[i]) cols.push_back(i);
        if (rows.empty()) continue;
        for (std::size_t t = 0; t < code.N; ++t) {
            Matrix b(rows.size(), cols.size());
            for (std::size_t a = 0; a < rows.size(); ++a)
                for (std::size_t c = 0; c < cols.size(); ++c) b(a, c) = code.blocks[rows[a]][cols[c]][t];
            if (mat_rank(f, b) != rows.size()) return false;
        }
    }
    return true;
}

std::string format_subset(const std::vector<NodeId>& subset, unsigned k) {
    std::string s = "{";
    for (std::size_t j = 0; j < subset.size(); ++j) {
        if (j) s += ",";
        s += std::to_string(subset[j].flat(k));
    }
    return s + "}";
}

}  // namespace hmsr

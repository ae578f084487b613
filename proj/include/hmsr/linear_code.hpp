/**************************************************************************
 * linear_code.hpp
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
 * Systematic (k+p, k) array codes with N symbols per node. Systematic node i
 * stores f_i; parity r stores sum_i G_{r,i} f_i. The Hadamard code families
 * have diagonal G_{r,i} (DiagonalCode); the permutation-equivalent form needs
 * dense blocks (BlockCode). Both share the data-collector machinery here.
 */

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hmsr/gf.hpp"

namespace hmsr {

enum class NodeKind { systematic, parity };

/// 1-based node identity. Flat numbering: systematic 1..k, then parity 1..p as k+1..k+p.
struct NodeId {
    NodeKind kind = NodeKind::systematic;
    unsigned index = 1;

    static NodeId systematic(unsigned i) { return {NodeKind::systematic, i}; }
    static NodeId parity(unsigned r) { return {NodeKind::parity, r}; }
    static NodeId from_flat(unsigned flat, unsigned k, unsigned parities);

    bool is_parity() const noexcept { return kind == NodeKind::parity; }
    unsigned flat(unsigned k) const noexcept { return is_parity() ? k + index : index; }
    std::string label() const;

    auto operator<=>(const NodeId&) const = default;
};

struct NodeContents {
    NodeId id;
    Vector data;
};

/// Dense-block systematic code.
struct BlockCode {
    PrimeField field;
    unsigned k = 0;
    std::size_t N = 0;
    std::vector<std::vector<Matrix>> parity_blocks;  // [r][i], each N x N

    unsigned parities() const noexcept { return static_cast<unsigned>(parity_blocks.size()); }
};

/// Diagonal-block systematic code; blocks[r][i] is the diagonal of G_{r,i}.
struct DiagonalCode {
    PrimeField field;
    unsigned k = 0;
    std::size_t N = 0;
    std::vector<std::vector<Vector>> blocks;

    unsigned parities() const noexcept { return static_cast<unsigned>(blocks.size()); }
    unsigned n() const noexcept { return k + parities(); }
    BlockCode dense() const;
};

/// Splits f (length kN) into the k+p node contents, systematic nodes first.
std::vector<NodeContents> encode(const DiagonalCode& code, std::span<const Elem> f);

/// Rows of the generator belonging to one node: N x kN.
Matrix node_generator(const BlockCode& code, NodeId id);
/// Vertical stack of the node generators for a k-subset: kN x kN.
Matrix dc_matrix(const BlockCode& code, const std::vector<NodeId>& subset);

/// Solves the data-collector system for any k distinct nodes.
/// Throws ErrorKind::non_mds when the DC matrix is singular.
Vector decode_dc(const BlockCode& code, const std::vector<NodeContents>& nodes);
Vector decode_dc(const DiagonalCode& code, const std::vector<NodeContents>& nodes);

/// All C(k+p, k) node subsets, lexicographic in flat id.
std::vector<std::vector<NodeId>> dc_subsets(unsigned k, unsigned parities);

struct MdsReport {
    bool pass = true;
    std::size_t subsets_checked = 0;
    std::size_t subsets_full_rank = 0;
    std::optional<std::vector<NodeId>> first_failure;
    std::size_t first_failure_rank = 0;
};

/// Exhaustive rank check of every DC matrix with the Gaussian-elimination oracle.
/// Stops at the first failure when `stop_at_first` is set.
MdsReport verify_mds_exhaustive(const BlockCode& code, bool stop_at_first = false);

/// Same decision via the per-coordinate k x k systems a diagonal code splits into.
/// Much cheaper; used to screen random candidates before the exhaustive check.
bool diagonal_mds_screen(const DiagonalCode& code);

std::string format_subset(const std::vector<NodeId>& subset, unsigned k);

}  // namespace hmsr

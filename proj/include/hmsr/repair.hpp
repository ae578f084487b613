/**************************************************************************
 * repair.hpp
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
 * Single-node repair by interference alignment.
 *
 * A repair is described in a "virtual" representation with unknown blocks
 * z_0 (what the newcomer wants) and z_1..z_r (interferers). Every surviving
 * node is either
 *
 *   - an equation node, storing  s ⊙ sum_j B_j ⊙ z_j   (s, B_j diagonal), or
 *   - a helper node, storing     s ⊙ z_u               for one interferer u,
 *
 * where s is an invertible local scaling. Equation node e is asked for U_e^T
 * applied to its virtual equation; helper u is asked for a basis W_u of the
 * interference it causes. Every request is composed with s^{-1} so that each
 * node transmits linear combinations of the symbols it physically stores.
 * The newcomer strips interference, solves the square system
 * [B_0 U_e ...]^T z_0 = useful, and rescales z_0 into the lost contents.
 *
 * The family-specific plans (systematic, first and second parity of the
 * 2-parity code; systematic and parity repair of the m-parity code) only
 * differ in how they fill in this model and choose U_e.
 */

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hmsr/linear_code.hpp"

namespace hmsr {

struct EquationRole {
    NodeId node;
    Vector storage_scale;         // s
    std::vector<Vector> coeffs;   // B_j for every unknown j (z_0 first)
};

struct HelperRole {
    NodeId node;
    Vector storage_scale;
    std::size_t unknown = 1;      // index into the unknowns, >= 1
};

struct AlignmentModel {
    PrimeField field{3};
    std::size_t N = 0;
    std::size_t unknowns = 0;
    std::vector<EquationRole> equations;
    std::vector<HelperRole> helpers;
    Vector target_scale;          // lost contents = target_scale ⊙ z_0
};

/// One survivor's transfer: the node sends spec^T * (its stored N symbols).
struct NodeDownload {
    NodeId node;
    Matrix spec;  // N x c
};

enum class RepairStrategy { aligned, reconstruct };

struct RepairPlan {
    NodeId failed;
    std::size_t N = 0;
    RepairStrategy strategy = RepairStrategy::aligned;
    std::vector<NodeDownload> downloads;
    std::size_t expected_bandwidth = 0;

    AlignmentModel model;                       // aligned strategy
    std::optional<DiagonalCode> reconstruct;    // reconstruct strategy
};

/// Builds the aligned plan. equation_requests[e] is U_e in the virtual
/// representation; helper requests are column bases of the interference.
RepairPlan plan_aligned_repair(NodeId failed, AlignmentModel model, const std::vector<Matrix>& equation_requests);

/// Whole-file fallback: N symbols from each of k nodes, decode, re-encode.
RepairPlan plan_reconstruct_repair(NodeId failed, const DiagonalCode& code);

struct NodeTransfer {
    NodeId node;
    Vector symbols;
};

struct RepairTranscript {
    NodeId failed;
    std::vector<NodeTransfer> transfers;
    Vector recovered;
    std::size_t gamma = 0;
    bool ok = false;  // set once `recovered` is checked against a reference
};

/// Runs a plan against the survivors' contents. Throws ErrorKind::construction
/// when the plan cannot isolate or invert the useful space (e.g. after a
/// download column was removed), ErrorKind::domain when a survivor is missing.
RepairTranscript execute_repair(const RepairPlan& plan, const std::vector<NodeContents>& survivors);

/// Rank bookkeeping of an aligned plan, for audits.
struct AlignmentRanks {
    std::size_t useful_rank = 0;                      // rank of [B_0 U_e]_e
    std::size_t useful_cols = 0;
    std::vector<std::size_t> interference_ranks;      // per helper
};
AlignmentRanks alignment_ranks(const RepairPlan& plan);

/// {"failed":..,"per_node":[{"id":..,"symbols_sent":..}],"gamma":..,"ok":..}
/// Node ids are flat (systematic 1..k, parities k+1..).
std::string transcript_json(const RepairTranscript& t, unsigned k);

}  // namespace hmsr

/**************************************************************************
 * mparity.hpp
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
 * The (k+m, k) m-ary Hadamard code: N = m^k, parity row r in 0..m-1 stores
 * sum_i lambda_{r,i} X_i^r f_i with lambda_{0,i} = 1. The remaining lambdas
 * are sampled from a seeded generator and the candidate is kept only if
 * every data collector has full rank.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hmsr/lattice.hpp"
#include "hmsr/linear_code.hpp"
#include "hmsr/repair.hpp"

namespace hmsr {

struct CodeDescriptorM {
    PrimeField field{3};
    unsigned k = 0;
    unsigned m = 0;
    std::size_t N = 0;
    std::uint64_t seed = 0;
    std::vector<std::vector<Elem>> lambda;  // (m-1) x k, rows r = 1..m-1

    unsigned n() const noexcept { return k + m; }
    std::size_t file_size() const noexcept { return k * N; }
    /// (k+m-1) m^{k-1}, the systematic repair bandwidth.
    std::size_t systematic_repair_bandwidth() const noexcept { return (k + m - 1) * (N / m); }

    /// lambda_{r,i}, with r in 0..m-1 and i 1-based; row 0 is all ones.
    Elem lambda_at(unsigned r, unsigned i) const;
    std::vector<DiagGenerator> generators() const;  // X_1 .. X_k
    /// diag(lambda_{r,i} X_i^r), r 0-based, i 1-based.
    Vector block_diag(unsigned r, unsigned i) const;
    DiagonalCode generator() const;
};

/// Smallest prime q >= `from` with m | q-1 and q >= 2k + 3.
std::uint32_t default_field_m(unsigned k, unsigned m, std::uint32_t from = 3);

/// Structural validation. Throws ErrorKind::invalid_descriptor.
void validate_structure(const CodeDescriptorM& code);

/// Builds a descriptor from explicit lambdas (no MDS check).
CodeDescriptorM make_code_m(unsigned k, unsigned m, const PrimeField& f, std::uint64_t seed,
                            std::vector<std::vector<Elem>> lambda);

/// The lambdas produced by `attempt` for a seed: mt19937_64 seeded with
/// `seed`, `attempt` full draws discarded first.
std::vector<std::vector<Elem>> sample_lambda(unsigned k, unsigned m, const PrimeField& f, std::uint64_t seed,
                                             unsigned attempt);

inline constexpr unsigned kLambdaRetryBudget = 4096;

/// Samples lambdas until verify_mds_m passes. Throws ErrorKind::unsupported_field
/// when m does not divide q-1 and ErrorKind::insufficient_field when the
/// retry budget is exhausted. The stored seed reproduces the accepted draw.
CodeDescriptorM build_code_m(unsigned k, unsigned m, const PrimeField& f, std::uint64_t seed);

/// build_code_m over the smallest admissible prime that admits an MDS
/// lambda for this seed. (k, m) = (2, 3) over F_7, for instance, has none.
CodeDescriptorM build_code_m_auto(unsigned k, unsigned m, std::uint64_t seed);

/// Exhaustive DC rank check with the elimination oracle.
MdsReport verify_mds_m(const CodeDescriptorM& code);

std::vector<NodeContents> encode(const CodeDescriptorM& code, std::span<const Elem> f);
Vector decode_dc(const CodeDescriptorM& code, const std::vector<NodeContents>& nodes);

/// V_i = {prod_{s != i} X_s^{x_s} w}, N x m^{k-1}.
Matrix systematic_repair_matrix_m(unsigned i, const CodeDescriptorM& code);

RepairPlan plan_repair_systematic_m(unsigned i, const CodeDescriptorM& code);

/// Parity p (1-based) re-expressed as a systematic node with one aligned
/// interferer. Falls back to whole-file reconstruction when no aligned plan
/// beats it.
RepairPlan plan_repair_parity_m(unsigned p, const CodeDescriptorM& code);

RepairPlan plan_repair(const CodeDescriptorM& code, NodeId failed);

RepairTranscript repair_systematic_m(unsigned i, const std::vector<NodeContents>& survivors,
                                     const CodeDescriptorM& code);
RepairTranscript repair_parity_m(unsigned p, const std::vector<NodeContents>& survivors,
                                 const CodeDescriptorM& code);
RepairTranscript repair(NodeId failed, const std::vector<NodeContents>& survivors, const CodeDescriptorM& code);

}  // namespace hmsr

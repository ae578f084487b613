/**************************************************************************
 * code2.hpp
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
 * The (k+2, k) Hadamard-design code. N = 2^{k+1} symbols per node, axes
 * X_1..X_{k+1} of the m = 2 lattice. Parity 1 stores sum_i f_i and parity 2
 * stores sum_i A_i f_i with the diagonal coding matrix
 *
 *     A_i = a_i X_i + b_i X_{k+1} + I,     a_i^2 - b_i^2 = -1.
 *
 * Constants come from seeds x_i via a_i - b_i = x_i, a_i + b_i = -x_i^{-1};
 * the code is MDS iff x_i != x_j and x_i x_j != 1 for all i != j, which a
 * prime field with q >= 2k + 3 always admits.
 */

#pragma once

#include <optional>
#include <vector>

#include "hmsr/linear_code.hpp"
#include "hmsr/lattice.hpp"

namespace hmsr {

struct Code2Constants {
    std::vector<Elem> x, a, b;
};

/// Greedy seeds 2, 3, 4, ... skipping {0, 1, q-1}, repeats and inverses of
/// earlier picks. Throws ErrorKind::insufficient_field when q < 2k + 3.
Code2Constants choose_constants(unsigned k, const PrimeField& f);

/// a = 2^{-1}(x - x^{-1}), b = -2^{-1}(x + x^{-1}).
std::pair<Elem, Elem> constants_from_seed(Elem x, const PrimeField& f);

struct CodeDescriptor2 {
    PrimeField field{3};
    unsigned k = 0;
    std::size_t N = 0;
    std::vector<Elem> x, a, b;

    unsigned n() const noexcept { return k + 2; }
    std::size_t file_size() const noexcept { return k * N; }
    /// (k+1) N / 2: the cut-set optimum for any single node.
    std::size_t optimal_repair_bandwidth() const noexcept { return (k + 1) * N / 2; }

    std::vector<DiagGenerator> generators() const;  // X_1 .. X_{k+1}
    /// diag(A_i), i 1-based.
    Vector coding_diag(unsigned i) const;
    DiagonalCode generator() const;
};

/// Structural validation (k >= 2, N = 2^{k+1}, lengths, residues < q).
/// Throws ErrorKind::invalid_descriptor.
void validate_structure(const CodeDescriptor2& code);

/// Builds a descriptor from explicit constants after structural validation.
/// Algebraic invariants are not enforced here; see check_mds_conditions.
CodeDescriptor2 make_code2(unsigned k, const PrimeField& f, std::vector<Elem> x, std::vector<Elem> a,
                           std::vector<Elem> b);

CodeDescriptor2 build_code2(unsigned k, const PrimeField& f);

struct MdsViolation {
    unsigned i = 0;          // 1-based, i < j
    unsigned j = 0;
    unsigned condition = 0;  // 1..4
};

/// The four pairwise inequalities
///   (1) a_i - a_j + (b_i - b_j)    (2) a_i + a_j - (b_i - b_j)
///   (3) a_i - a_j - (b_i - b_j)    (4) a_i + a_j + (b_i - b_j)
/// Returns the first vanishing one in (i, j, condition) order.
std::optional<MdsViolation> check_mds_conditions(const PrimeField& f, std::span<const Elem> a,
                                                 std::span<const Elem> b);

/// Entries of A_i that are zero make the single-parity DCs singular; the four
/// inequalities do not cover this, so it is reported separately. Returns the
/// first 1-based i with a singular A_i.
std::optional<unsigned> singular_coding_matrix(const CodeDescriptor2& code);

std::vector<NodeContents> encode(const CodeDescriptor2& code, std::span<const Elem> f);
Vector decode_dc(const CodeDescriptor2& code, const std::vector<NodeContents>& nodes);

struct Code2MdsReport {
    MdsReport exhaustive;
    /// Rank of [[I, I], [A_i, A_j]] for every pair; must agree with the
    /// exhaustive check on the two-parity subsets.
    std::size_t reduced_pairs_checked = 0;
    std::optional<std::pair<unsigned, unsigned>> reduced_failure;
    bool reduced_agrees = true;

    bool pass() const noexcept { return exhaustive.pass && reduced_agrees; }
};

Code2MdsReport verify_mds(const CodeDescriptor2& code);

}  // namespace hmsr

/**************************************************************************
 * permequiv.hpp
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
 * Similarity between diagonal Hadamard-design codes and permutation-matrix
 * codes. X_i H = H P_i, where P_i permutes the Hadamard columns by the
 * lattice shift x -> x + e_i. Conjugations use H^{-1} = N^{-1} conj(H)^T so
 * every identity holds exactly over F_q.
 */

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hmsr/code2.hpp"
#include "hmsr/mparity.hpp"

namespace hmsr {

/// Row-selection form: P = I_{mapping,:}, so P(j, mapping[j]) = 1.
/// Indices are 0-based in memory and 1-based when serialized.
struct PermutationSpec {
    std::vector<std::size_t> mapping;

    std::size_t N() const noexcept { return mapping.size(); }
    bool is_bijection() const;
    Matrix matrix() const;
    /// (P Q) as a mapping.
    PermutationSpec then(const PermutationSpec& q) const;
    PermutationSpec power(unsigned e) const;
    static PermutationSpec identity(std::size_t N);

    friend bool operator==(const PermutationSpec&, const PermutationSpec&) = default;
};

/// P_i with X_i H = H P_i, computed from lattice shifts.
/// Throws ErrorKind::degenerate_field when N = 0 mod q and
/// ErrorKind::unsupported_field when m does not divide q-1.
PermutationSpec x_to_permutation(unsigned i, unsigned m, unsigned L, const PrimeField& f);

/// Conjugates each permutation into the Hadamard basis: H P H^{-1}.
/// Returns the diagonals when every conjugate is diagonal, nullopt otherwise.
/// Throws ErrorKind::domain for non-commuting or malformed inputs.
std::optional<std::vector<Vector>> permutation_to_x(const std::vector<PermutationSpec>& perms, unsigned m,
                                                    const PrimeField& f);

/// Generator blocks of the permutation form, built combinatorially:
/// lambda_{r,i} P_i^r for the m-parity code and a_i P_i + b_i P_{k+1} + I
/// for the 2-parity code.
BlockCode code_to_permutation_form(const CodeDescriptorM& code);
BlockCode code_to_permutation_form(const CodeDescriptor2& code);

/// H^{-1} G H for every diagonal block G, by dense multiplication.
BlockCode conjugate_by_hadamard(const DiagonalCode& code, unsigned m, unsigned L);

/// "[5,6,7,8,1,2,3,4]"
std::string format_permutation(const PermutationSpec& p);
/// Throws ErrorKind::format on malformed text or a non-bijection.
PermutationSpec parse_permutation(const std::string& text);

}  // namespace hmsr

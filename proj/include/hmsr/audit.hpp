/**************************************************************************
 * audit.hpp
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
 * Descriptor audit: exhaustive MDS check, the pairwise coefficient
 * conditions, Hadamard orthogonality, and agreement between lattice rank
 * predictions and elimination ranks.
 */

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hmsr/descriptor.hpp"

namespace hmsr {

struct LatticeAgreement {
    std::size_t checks = 0;
    std::size_t mismatches = 0;
};

/// rank[V_i | X_j V_i | ... | X_j^{m-1} V_i] against the lattice union, for
/// every axis pair (i, j) of {0..m-1}^L.
LatticeAgreement check_lattice_ranks(unsigned m, unsigned L, const PrimeField& f);

/// H conj(H)^T == N I.
bool check_hadamard_orthogonality(unsigned m, unsigned L, const PrimeField& f);

struct PairConditions {
    unsigned i = 0, j = 0;
    std::array<Elem, 4> values{};
};

struct AuditReport {
    MdsReport mds;
    std::vector<PairConditions> pair_conditions;  // 2-parity only
    std::optional<MdsViolation> condition_violation;
    std::optional<unsigned> singular_coding;
    bool reduced_agrees = true;
    bool hadamard_ok = false;
    LatticeAgreement lattice;

    bool pass() const noexcept {
        return mds.pass && !condition_violation && !singular_coding && reduced_agrees && hadamard_ok &&
               lattice.mismatches == 0;
    }
};

AuditReport audit(const AnyCode& code);
std::string render_audit(const AnyCode& code, const AuditReport& r);

}  // namespace hmsr

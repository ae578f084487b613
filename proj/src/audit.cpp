/**************************************************************************
 * audit.cpp
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

#include "hmsr/audit.hpp"

#include <sstream>

namespace hmsr {

LatticeAgreement check_lattice_ranks(unsigned m, unsigned L, const PrimeField& f) {
    LatticeAgreement out;
    const auto gens = x_generators(L, m, f);
    for (unsigned i = 1; i <= L; ++i) {
        const LatticeSet V = LatticeSet::axis_slice(m, L, i);
        for (unsigned j = 1; j <= L; ++j) {
            std::vector<LatticeSet> sets;
            Matrix cols(ipow(m, L), 0);
            for (unsigned l = 0; l < m; ++l) {
                sets.push_back(lattice_shift(V, j, l));
                cols = hconcat(cols, realize(sets.back(), gens, f));
            }
            ++out.checks;
            if (predicted_rank(sets) != mat_rank(f, cols)) ++out.mismatches;
        }
    }
    return out;
}

bool check_hadamard_orthogonality(unsigned m, unsigned L, const PrimeField& f) {
    const HadamardMatrix h = hadamard(m, L, f);
    const Matrix prod = mat_mul(f, h.matrix, hadamard_conjugate_transpose(h, f));
    return prod == mat_scale(f, Matrix::identity(h.N()), f.reduce(static_cast<std::int64_t>(h.N())));
}

AuditReport audit(const AnyCode& code) {
    AuditReport r;
    const PrimeField& f = code_field(code);
    unsigned m = 2, L = 0;
    if (const auto* c2 = std::get_if<CodeDescriptor2>(&code)) {
        const Code2MdsReport rep = verify_mds(*c2);
        r.mds = rep.exhaustive;
        r.reduced_agrees = rep.reduced_agrees;
        r.condition_violation = check_mds_conditions(f, c2->a, c2->b);
        r.singular_coding = singular_coding_matrix(*c2);
        for (unsigned i = 0; i < c2->k; ++i) {
            for (unsigned j = i + 1; j < c2->k; ++j) {
                const Elem db = f.sub(c2->b[i], c2->b[j]);
                const Elem diff = f.sub(c2->a[i], c2->a[j]);
                const Elem sum = f.add(c2->a[i], c2->a[j]);
                r.pair_conditions.push_back(
                    {i + 1, j + 1, {f.add(diff, db), f.sub(sum, db), f.sub(diff, db), f.add(sum, db)}});
            }
        }
        L = c2->k + 1;
    } else {
        const auto& cm = std::get<CodeDescriptorM>(code);
        r.mds = verify_mds_m(cm);
        m = cm.m;
        L = cm.k;
    }
    r.hadamard_ok = check_hadamard_orthogonality(m, L, f);
    r.lattice = check_lattice_ranks(m, L, f);
    return r;
}

std::string render_audit(const AnyCode& code, const AuditReport& r) {
    std::ostringstream os;
    const unsigned k = code_k(code);
    os << r.mds.subsets_full_rank << "/" << r.mds.subsets_checked << " DC subsets full rank\n";
    if (r.mds.first_failure)
        os << "first rank-deficient subset: " << format_subset(*r.mds.first_failure, k) << " (rank "
           << r.mds.first_failure_rank << " < " << k * code_N(code) << ")\n";
    if (!r.pair_conditions.empty()) {
        os << "pairwise coefficient conditions (i, j: c1 c2 c3 c4)\n";
        for (const auto& p : r.pair_conditions) {
            os << "  " << p.i << ", " << p.j << ":";
            for (Elem v : p.values) os << " " << v;
            os << "\n";
        }
    }
    if (r.condition_violation)
        os << "condition " << r.condition_violation->condition << " vanishes for (" << r.condition_violation->i
           << ", " << r.condition_violation->j << ")\n";
    else if (std::holds_alternative<CodeDescriptor2>(code))
        os << "all pairwise conditions nonzero\n";
    if (r.singular_coding) os << "coding matrix A_" << *r.singular_coding << " is singular\n";
    if (!r.reduced_agrees) os << "reduced two-parity criterion disagrees with the exhaustive check\n";
    os << "Hadamard orthogonality: " << (r.hadamard_ok ? "ok" : "FAILED") << "\n";
    os << "lattice vs elimination ranks: " << (r.lattice.checks - r.lattice.mismatches) << "/" << r.lattice.checks
       << " agree\n";
    os << (r.pass() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

}  // namespace hmsr

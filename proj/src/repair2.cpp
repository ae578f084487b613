/**************************************************************************
 * repair2.cpp
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

#include "hmsr/repair2.hpp"

namespace hmsr {

namespace {

/// Points of {0,1}^L with x_1 = sum of the listed axes mod 2; all other
/// coordinates range freely.
LatticeSet parity_constrained(unsigned L, unsigned last_summed) {
    LatticeSet s{2, L, {}};
    for (const auto& p : LatticeSet::full(2, L).points) {
        unsigned sum = 0;
        for (unsigned a = 2; a <= last_summed; ++a) sum += p[a - 1];
        if (p[0] == sum % 2) s.points.insert(p);
    }
    return s;
}

Vector ones(std::size_t N) { return Vector(N, 1); }

Vector negated_ones(const PrimeField& f, std::size_t N) { return Vector(N, f.minus_one()); }

}  // namespace

LatticeSet systematic_repair_points(unsigned i, unsigned k) { return LatticeSet::axis_slice(2, k + 1, i); }

LatticeSet parity1_repair_points(unsigned k) { return parity_constrained(k + 1, k + 1); }

LatticeSet parity2_repair_points(unsigned k) { return parity_constrained(k + 1, k); }

Matrix systematic_repair_matrix(unsigned i, const CodeDescriptor2& code) {
    if (i < 1 || i > code.k) throw Error(ErrorKind::domain, "systematic index out of range");
    return realize(systematic_repair_points(i, code.k), code.generators(), code.field);
}

Vector transformed_coding_diag(unsigned i, const CodeDescriptor2& code) {
    const PrimeField& f = code.field;
    if (code.a[i - 1] == 0)
        throw Error(ErrorKind::invalid_descriptor, "a_" + std::to_string(i) + " = 0 blocks parity-2 repair");
    const Elem ainv = f.inv(code.a[i - 1]);
    const Elem ab = f.mul(ainv, code.b[i - 1]);
    const Vector xi = x_diag(i, code.k + 1, 2, f).diag;
    const Vector xl = x_diag(code.k + 1, code.k + 1, 2, f).diag;
    const Vector A = code.coding_diag(i);
    Vector d(code.N);
    for (std::size_t t = 0; t < code.N; ++t) {
        d[t] = f.add(f.sub(1, f.mul(ab, f.mul(xi[t], xl[t]))), f.mul(ainv, xi[t]));
        if (f.mul(d[t], A[t]) != 2)
            throw Error(ErrorKind::invalid_descriptor, "constants " + std::to_string(i) + " violate a^2 - b^2 = -1");
    }
    return d;
}

RepairPlan plan_repair(const CodeDescriptor2& code, NodeId failed) {
    validate_structure(code);
    const PrimeField& f = code.field;
    const unsigned k = code.k;
    const std::size_t N = code.N;
    const auto gens = code.generators();

    AlignmentModel m;
    m.field = f;
    m.N = N;
    m.unknowns = k;
    m.target_scale = ones(N);

    if (!failed.is_parity()) {
        const unsigned i = failed.index;
        if (i < 1 || i > k) throw Error(ErrorKind::domain, "no such systematic node");
        const Matrix V = systematic_repair_matrix(i, code);
        EquationRole p1{NodeId::parity(1), ones(N), {ones(N)}};
        EquationRole p2{NodeId::parity(2), ones(N), {code.coding_diag(i)}};
        std::size_t u = 1;
        for (unsigned s = 1; s <= k; ++s) {
            if (s == i) continue;
            p1.coeffs.push_back(ones(N));
            p2.coeffs.push_back(code.coding_diag(s));
            m.helpers.push_back({NodeId::systematic(s), ones(N), u++});
        }
        m.equations = {std::move(p1), std::move(p2)};
        return plan_aligned_repair(failed, std::move(m), {V, V});
    }

    const Vector x1 = gens[0].diag;
    if (failed.index == 1) {
        const Matrix Va = realize(parity1_repair_points(k), gens, f);
        const Vector A1 = code.coding_diag(1);
        EquationRole s1{NodeId::systematic(1), ones(N), {ones(N)}};
        EquationRole p2{NodeId::parity(2), ones(N), {A1}};
        for (unsigned s = 2; s <= k; ++s) {
            s1.coeffs.push_back(negated_ones(f, N));
            p2.coeffs.push_back(vec_sub(f, code.coding_diag(s), A1));
            m.helpers.push_back({NodeId::systematic(s), ones(N), s - 1});
        }
        m.equations = {std::move(s1), std::move(p2)};
        return plan_aligned_repair(failed, std::move(m), {diag_mul(f, x1, Va), Va});
    }

    if (failed.index == 2) {
        const Matrix Vb = realize(parity2_repair_points(k), gens, f);
        std::vector<Vector> C;
        for (unsigned s = 1; s <= k; ++s) C.push_back(transformed_coding_diag(s, code));
        EquationRole s1{NodeId::systematic(1), C[0], {ones(N)}};
        EquationRole p1{NodeId::parity(1), ones(N), {C[0]}};
        for (unsigned s = 2; s <= k; ++s) {
            s1.coeffs.push_back(negated_ones(f, N));
            p1.coeffs.push_back(vec_sub(f, C[s - 1], C[0]));
            m.helpers.push_back({NodeId::systematic(s), C[s - 1], s - 1});
        }
        m.equations = {std::move(s1), std::move(p1)};
        m.target_scale = Vector(N, 2);
        return plan_aligned_repair(failed, std::move(m), {diag_mul(f, x1, Vb), Vb});
    }
    throw Error(ErrorKind::domain, "no such parity node");
}

RepairTranscript repair_systematic(unsigned i, const std::vector<NodeContents>& survivors,
                                   const CodeDescriptor2& code) {
    return execute_repair(plan_repair(code, NodeId::systematic(i)), survivors);
}

RepairTranscript repair_parity1(const std::vector<NodeContents>& survivors, const CodeDescriptor2& code) {
    return execute_repair(plan_repair(code, NodeId::parity(1)), survivors);
}

RepairTranscript repair_parity2(const std::vector<NodeContents>& survivors, const CodeDescriptor2& code) {
    return execute_repair(plan_repair(code, NodeId::parity(2)), survivors);
}

RepairTranscript repair(NodeId failed, const std::vector<NodeContents>& survivors, const CodeDescriptor2& code) {
    return execute_repair(plan_repair(code, failed), survivors);
}

}  // namespace hmsr

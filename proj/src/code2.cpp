/**************************************************************************
 * code2.cpp
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

#include "hmsr/code2.hpp"

#include <algorithm>
#include <string>

namespace hmsr {

std::pair<Elem, Elem> constants_from_seed(Elem x, const PrimeField& f) {
    const Elem half = f.inv(2);
    const Elem xinv = f.inv(x);
    const Elem a = f.mul(half, f.sub(x, xinv));
    const Elem b = f.neg(f.mul(half, f.add(x, xinv)));
    return {a, b};
}

Code2Constants choose_constants(unsigned k, const PrimeField& f) {
    if (k < 2) throw Error(ErrorKind::domain, "k must be at least 2");
    if (f.q() < 2 * k + 3)
        throw Error(ErrorKind::insufficient_field, "q = " + std::to_string(f.q()) + " < 2k+3 = " +
                                                       std::to_string(2 * k + 3));
    Code2Constants c;
    for (Elem cand = 2; c.x.size() < k && cand < f.q() - 1; ++cand) {
        const bool clash = std::any_of(c.x.begin(), c.x.end(), [&](Elem prev) {
            return cand == prev || f.mul(cand, prev) == 1;
        });
        if (clash) continue;
        c.x.push_back(cand);
    }
    // q >= 2k+3 leaves (q-3)/2 >= k inverse pairs to draw from.
    if (c.x.size() < k) throw Error(ErrorKind::insufficient_field, "ran out of seeds");
    for (Elem x : c.x) {
        auto [a, b] = constants_from_seed(x, f);
        c.a.push_back(a);
        c.b.push_back(b);
    }
    return c;
}

std::vector<DiagGenerator> CodeDescriptor2::generators() const { return x_generators(k + 1, 2, field); }

Vector CodeDescriptor2::coding_diag(unsigned i) const {
    if (i < 1 || i > k) throw Error(ErrorKind::domain, "coding matrix index out of range");
    const DiagGenerator xi = x_diag(i, k + 1, 2, field);
    const DiagGenerator xl = x_diag(k + 1, k + 1, 2, field);
    Vector d(N);
    for (std::size_t t = 0; t < N; ++t)
        d[t] = field.add(field.add(field.mul(a[i - 1], xi.diag[t]), field.mul(b[i - 1], xl.diag[t])), 1);
    return d;
}

DiagonalCode CodeDescriptor2::generator() const {
    DiagonalCode g{field, k, N, {}};
    g.blocks.emplace_back(k, Vector(N, 1));
    std::vector<Vector> second;
    for (unsigned i = 1; i <= k; ++i) second.push_back(coding_diag(i));
    g.blocks.push_back(std::move(second));
    return g;
}

void validate_structure(const CodeDescriptor2& code) {
    auto fail = [](const std::string& why) { throw Error(ErrorKind::invalid_descriptor, why); };
    if (code.k < 2) fail("k must be at least 2");
    if (code.k > 12) fail("k above 12 is outside the supported range");
    if (code.N != (std::size_t{1} << (code.k + 1))) fail("N must equal 2^(k+1)");
    if (code.x.size() != code.k || code.a.size() != code.k || code.b.size() != code.k)
        fail("x, a and b must each hold k entries");
    for (const auto* v : {&code.x, &code.a, &code.b})
        for (Elem e : *v)
            if (!code.field.contains(e)) fail("constant outside the field");
}

CodeDescriptor2 make_code2(unsigned k, const PrimeField& f, std::vector<Elem> x, std::vector<Elem> a,
                           std::vector<Elem> b) {
    CodeDescriptor2 code{f, k, k < 2 || k > 12 ? 0 : std::size_t{1} << (k + 1), std::move(x), std::move(a),
                         std::move(b)};
    validate_structure(code);
    return code;
}

CodeDescriptor2 build_code2(unsigned k, const PrimeField& f) {
    Code2Constants c = choose_constants(k, f);
    return make_code2(k, f, std::move(c.x), std::move(c.a), std::move(c.b));
}

std::optional<MdsViolation> check_mds_conditions(const PrimeField& f, std::span<const Elem> a,
                                                 std::span<const Elem> b) {
    if (a.size() != b.size()) throw Error(ErrorKind::size, "a and b differ in length");
    const unsigned k = static_cast<unsigned>(a.size());
    for (unsigned i = 0; i < k; ++i) {
        for (unsigned j = i + 1; j < k; ++j) {
            const Elem db = f.sub(b[i], b[j]);
            const Elem diff = f.sub(a[i], a[j]);
            const Elem sum = f.add(a[i], a[j]);
            const Elem values[4] = {f.add(diff, db), f.sub(sum, db), f.sub(diff, db), f.add(sum, db)};
            for (unsigned c = 0; c < 4; ++c)
                if (values[c] == 0) return MdsViolation{i + 1, j + 1, c + 1};
        }
    }
    return std::nullopt;
}

std::optional<unsigned> singular_coding_matrix(const CodeDescriptor2& code) {
    for (unsigned i = 1; i <= code.k; ++i) {
        const Vector d = code.coding_diag(i);
        if (std::find(d.begin(), d.end(), Elem{0}) != d.end()) return i;
    }
    return std::nullopt;
}

std::vector<NodeContents> encode(const CodeDescriptor2& code, std::span<const Elem> f) {
    return encode(code.generator(), f);
}

Vector decode_dc(const CodeDescriptor2& code, const std::vector<NodeContents>& nodes) {
    return decode_dc(code.generator(), nodes);
}

Code2MdsReport verify_mds(const CodeDescriptor2& code) {
    Code2MdsReport rep;
    const BlockCode dense = code.generator().dense();
    rep.exhaustive = verify_mds_exhaustive(dense);

    const PrimeField& f = code.field;
    const std::size_t N = code.N;
    std::vector<Vector> diag;
    for (unsigned i = 1; i <= code.k; ++i) diag.push_back(code.coding_diag(i));

    // Reduced criterion for the DC that drops systematic i, j and keeps both parities.
    for (unsigned i = 1; i <= code.k; ++i) {
        for (unsigned j = i + 1; j <= code.k; ++j) {
            Matrix m(2 * N, 2 * N);
            for (std::size_t t = 0; t < N; ++t) {
                m(t, t) = 1;
                m(t, N + t) = 1;
                m(N + t, t) = diag[i - 1][t];
                m(N + t, N + t) = diag[j - 1][t];
            }
            ++rep.reduced_pairs_checked;
            const bool reduced_ok = mat_rank(f, m) == 2 * N;
            if (!reduced_ok && !rep.reduced_failure) rep.reduced_failure = std::make_pair(i, j);

            std::vector<NodeId> subset;
            for (unsigned s = 1; s <= code.k; ++s)
                if (s != i && s != j) subset.push_back(NodeId::systematic(s));
            subset.push_back(NodeId::parity(1));
            subset.push_back(NodeId::parity(2));
            const bool full_ok = mat_rank(f, dc_matrix(dense, subset)) == code.k * N;
            if (full_ok != reduced_ok) rep.reduced_agrees = false;
        }
    }
    return rep;
}

}  // namespace hmsr

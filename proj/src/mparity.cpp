/**************************************************************************
 * mparity.cpp
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

#include "hmsr/mparity.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace hmsr {

namespace {

Vector diag_power(const PrimeField& f, const Vector& d, unsigned m, long e) {
    const auto r = static_cast<std::uint64_t>(((e % static_cast<long>(m)) + m) % m);
    Vector out(d.size());
    for (std::size_t t = 0; t < d.size(); ++t) out[t] = f.pow(d[t], r);
    return out;
}

bool all_nonzero(const Vector& v) {
    return std::none_of(v.begin(), v.end(), [](Elem e) { return e == 0; });
}

Vector elementwise_inverse(const PrimeField& f, const Vector& v) {
    Vector out(v.size());
    for (std::size_t t = 0; t < v.size(); ++t) out[t] = f.inv(v[t]);
    return out;
}

}  // namespace

Elem CodeDescriptorM::lambda_at(unsigned r, unsigned i) const {
    if (i < 1 || i > k || r >= m) throw Error(ErrorKind::domain, "lambda index out of range");
    return r == 0 ? 1 : lambda[r - 1][i - 1];
}

std::vector<DiagGenerator> CodeDescriptorM::generators() const { return x_generators(k, m, field); }

Vector CodeDescriptorM::block_diag(unsigned r, unsigned i) const {
    const Vector x = diag_power(field, x_diag(i, k, m, field).diag, m, r);
    return vec_scale(field, x, lambda_at(r, i));
}

DiagonalCode CodeDescriptorM::generator() const {
    DiagonalCode g{field, k, N, {}};
    for (unsigned r = 0; r < m; ++r) {
        std::vector<Vector> row;
        for (unsigned i = 1; i <= k; ++i) row.push_back(block_diag(r, i));
        g.blocks.push_back(std::move(row));
    }
    return g;
}

std::uint32_t default_field_m(unsigned k, unsigned m, std::uint32_t from) {
    if (m < 2) throw Error(ErrorKind::domain, "m must be at least 2");
    for (std::uint32_t q = std::max({2 * k + 3, 3u, from}); q < kMaxModulus; ++q)
        if (is_prime(q) && (q - 1) % m == 0) return q;
    throw Error(ErrorKind::insufficient_field, "no prime below 2^16 fits k and m");
}

void validate_structure(const CodeDescriptorM& code) {
    auto fail = [](const std::string& why) { throw Error(ErrorKind::invalid_descriptor, why); };
    if (code.k < 2) fail("k must be at least 2");
    if (code.m < 2) fail("m must be at least 2");
    if ((code.field.q() - 1) % code.m != 0) fail("m must divide q-1");
    std::size_t N = 1;
    for (unsigned i = 0; i < code.k; ++i) {
        N *= code.m;
        if (N > (1u << 16)) fail("N = m^k is outside the supported range");
    }
    if (code.N != N) fail("N must equal m^k");
    if (code.lambda.size() != code.m - 1) fail("lambda must have m-1 rows");
    for (const auto& row : code.lambda) {
        if (row.size() != code.k) fail("lambda rows must hold k entries");
        for (Elem e : row)
            if (e == 0 || !code.field.contains(e)) fail("lambda entries must be nonzero field elements");
    }
}

CodeDescriptorM make_code_m(unsigned k, unsigned m, const PrimeField& f, std::uint64_t seed,
                            std::vector<std::vector<Elem>> lambda) {
    CodeDescriptorM code;
    code.field = f;
    code.k = k;
    code.m = m;
    code.N = 1;
    for (unsigned i = 0; i < k && code.N <= (1u << 16); ++i) code.N *= m;
    code.seed = seed;
    code.lambda = std::move(lambda);
    validate_structure(code);
    return code;
}

std::vector<std::vector<Elem>> sample_lambda(unsigned k, unsigned m, const PrimeField& f, std::uint64_t seed,
                                             unsigned attempt) {
    std::mt19937_64 rng(seed);
    const unsigned per_draw = (m - 1) * k;
    rng.discard(static_cast<unsigned long long>(attempt) * per_draw);
    std::vector<std::vector<Elem>> lambda(m - 1, std::vector<Elem>(k));
    // One 64-bit draw per entry; the modulo bias is below 2^-47 for q < 2^16.
    for (auto& row : lambda)
        for (auto& e : row) e = static_cast<Elem>(1 + rng() % (f.q() - 1));
    return lambda;
}

CodeDescriptorM build_code_m(unsigned k, unsigned m, const PrimeField& f, std::uint64_t seed) {
    if (m < 2) throw Error(ErrorKind::domain, "m must be at least 2");
    if ((f.q() - 1) % m != 0)
        throw Error(ErrorKind::unsupported_field,
                    std::to_string(m) + " does not divide q-1 = " + std::to_string(f.q() - 1));
    for (unsigned attempt = 0; attempt < kLambdaRetryBudget; ++attempt) {
        CodeDescriptorM code = make_code_m(k, m, f, seed, sample_lambda(k, m, f, seed, attempt));
        if (!diagonal_mds_screen(code.generator())) continue;
        if (verify_mds_m(code).pass) return code;
    }
    throw Error(ErrorKind::insufficient_field, "no MDS lambda found over F_" + std::to_string(f.q()) + " after " +
                                                   std::to_string(kLambdaRetryBudget) + " draws");
}

CodeDescriptorM build_code_m_auto(unsigned k, unsigned m, std::uint64_t seed) {
    for (std::uint32_t q = default_field_m(k, m);; q = default_field_m(k, m, q + 1)) {
        try {
            return build_code_m(k, m, PrimeField(q), seed);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::insufficient_field) throw;
        }
    }
}

MdsReport verify_mds_m(const CodeDescriptorM& code) { return verify_mds_exhaustive(code.generator().dense()); }

std::vector<NodeContents> encode(const CodeDescriptorM& code, std::span<const Elem> f) {
    return encode(code.generator(), f);
}

Vector decode_dc(const CodeDescriptorM& code, const std::vector<NodeContents>& nodes) {
    return decode_dc(code.generator(), nodes);
}

Matrix systematic_repair_matrix_m(unsigned i, const CodeDescriptorM& code) {
    if (i < 1 || i > code.k) throw Error(ErrorKind::domain, "systematic index out of range");
    return realize(LatticeSet::axis_slice(code.m, code.k, i), code.generators(), code.field);
}

RepairPlan plan_repair_systematic_m(unsigned i, const CodeDescriptorM& code) {
    validate_structure(code);
    const Matrix V = systematic_repair_matrix_m(i, code);
    AlignmentModel model;
    model.field = code.field;
    model.N = code.N;
    model.unknowns = code.k;
    model.target_scale = Vector(code.N, 1);
    for (unsigned r = 0; r < code.m; ++r) {
        EquationRole eq{NodeId::parity(r + 1), Vector(code.N, 1), {code.block_diag(r, i)}};
        for (unsigned s = 1; s <= code.k; ++s)
            if (s != i) eq.coeffs.push_back(code.block_diag(r, s));
        model.equations.push_back(std::move(eq));
    }
    std::size_t u = 1;
    for (unsigned s = 1; s <= code.k; ++s)
        if (s != i) model.helpers.push_back({NodeId::systematic(s), Vector(code.N, 1), u++});
    return plan_aligned_repair(NodeId::systematic(i), std::move(model),
                               std::vector<Matrix>(code.m, V));
}

RepairPlan plan_repair_parity_m(unsigned p, const CodeDescriptorM& code) {
    validate_structure(code);
    if (p < 1 || p > code.m) throw Error(ErrorKind::domain, "no such parity node");
    const PrimeField& f = code.field;
    const unsigned k = code.k, m = code.m;
    const std::size_t N = code.N;
    const unsigned rp = p - 1;
    const auto gens = code.generators();
    const Elem mu = f.inv(code.lambda_at(rp, 1));
    const Vector x1_neg = diag_power(f, gens[0].diag, m, -static_cast<long>(rp));

    // y = parity p; f_1 = mu X_1^{-p} (y - sum_{s>1} lambda_{p,s} X_s^p f_s).
    AlignmentModel model;
    model.field = f;
    model.N = N;
    model.unknowns = k;
    model.target_scale = Vector(N, 1);
    {
        EquationRole e{NodeId::systematic(1), Vector(N, 1), {vec_scale(f, x1_neg, mu)}};
        for (unsigned s = 2; s <= k; ++s)
            e.coeffs.push_back(vec_scale(f, vec_hadamard(f, x1_neg, code.block_diag(rp, s)), f.neg(mu)));
        model.equations.push_back(std::move(e));
    }
    for (unsigned r = 0; r < m; ++r) {
        if (r == rp) continue;
        const Vector shift = diag_power(f, gens[0].diag, m, static_cast<long>(r) - static_cast<long>(rp));
        const Elem c = f.mul(code.lambda_at(r, 1), mu);
        EquationRole e{NodeId::parity(r + 1), Vector(N, 1), {vec_scale(f, shift, c)}};
        for (unsigned s = 2; s <= k; ++s) {
            const Vector carried = vec_scale(f, vec_hadamard(f, shift, code.block_diag(rp, s)), c);
            e.coeffs.push_back(vec_sub(f, code.block_diag(r, s), carried));
        }
        model.equations.push_back(std::move(e));
    }
    for (unsigned s = 2; s <= k; ++s) model.helpers.push_back({NodeId::systematic(s), Vector(N, 1), s - 1});

    // Align one interferer s* by asking equation e for B_{e,s*}^{-1} W, over
    // every axis slice W; keep the cheapest plan whose useful space is full.
    std::optional<RepairPlan> best;
    for (std::size_t star = 1; star < k; ++star) {
        std::vector<Vector> inv;
        for (const auto& e : model.equations) {
            if (!all_nonzero(e.coeffs[star])) break;
            inv.push_back(elementwise_inverse(f, e.coeffs[star]));
        }
        if (inv.size() != model.equations.size()) continue;
        for (unsigned axis = 1; axis <= k; ++axis) {
            const Matrix W = realize(LatticeSet::axis_slice(m, k, axis), gens, f);
            std::vector<Matrix> requests;
            for (const auto& d : inv) requests.push_back(diag_mul(f, d, W));
            RepairPlan plan = plan_aligned_repair(NodeId::parity(p), model, requests);
            const AlignmentRanks ranks = alignment_ranks(plan);
            if (ranks.useful_rank != N || ranks.useful_cols != N) continue;
            if (!best || plan.expected_bandwidth < best->expected_bandwidth) best = std::move(plan);
        }
    }
    if (best && best->expected_bandwidth < code.file_size()) return std::move(*best);
    return plan_reconstruct_repair(NodeId::parity(p), code.generator());
}

RepairPlan plan_repair(const CodeDescriptorM& code, NodeId failed) {
    return failed.is_parity() ? plan_repair_parity_m(failed.index, code)
                              : plan_repair_systematic_m(failed.index, code);
}

RepairTranscript repair_systematic_m(unsigned i, const std::vector<NodeContents>& survivors,
                                     const CodeDescriptorM& code) {
    return execute_repair(plan_repair_systematic_m(i, code), survivors);
}

RepairTranscript repair_parity_m(unsigned p, const std::vector<NodeContents>& survivors,
                                 const CodeDescriptorM& code) {
    return execute_repair(plan_repair_parity_m(p, code), survivors);
}

RepairTranscript repair(NodeId failed, const std::vector<NodeContents>& survivors, const CodeDescriptorM& code) {
    return execute_repair(plan_repair(code, failed), survivors);
}

}  // namespace hmsr

/**************************************************************************
 * test_mparity.cpp
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hmsr/mparity.hpp"
#include "support.hpp"

using namespace hmsr;
using testsupport::kind_of;
using testsupport::random_vector;
using testsupport::without;

namespace {

/// Rows of node `flat` in the dense generator, from the defining formula:
/// parity r holds sum_i lambda_{r,i} X_i^r f_i.
oracle::Mat oracle_node_rows(const CodeDescriptorM& c, unsigned flat) {
    const std::int64_t q = c.field.q();
    const std::size_t N = c.N;
    oracle::Mat g(N, std::vector<std::int64_t>(c.k * N, 0));
    if (flat <= c.k) {
        for (std::size_t t = 0; t < N; ++t) g[t][(flat - 1) * N + t] = 1;
        return g;
    }
    const unsigned r = flat - c.k - 1;
    for (unsigned i = 1; i <= c.k; ++i) {
        const auto xi = oracle::x_diag(i, c.k, c.m, q);
        const std::int64_t lam = r == 0 ? 1 : c.lambda[r - 1][i - 1];
        for (std::size_t t = 0; t < N; ++t) g[t][(i - 1) * N + t] = oracle::mod(lam * oracle::pow_mod(xi[t], r, q), q);
    }
    return g;
}

std::size_t oracle_dc_rank(const CodeDescriptorM& c, const std::vector<NodeId>& subset) {
    oracle::Mat stacked;
    for (const auto& id : subset) {
        const auto rows = oracle_node_rows(c, id.flat(c.k));
        stacked.insert(stacked.end(), rows.begin(), rows.end());
    }
    return oracle::rank(stacked, c.field.q());
}

}  // namespace

TEST_CASE("descriptor shape for the six-node ternary code") {
    const CodeDescriptorM c = build_code_m(3, 3, PrimeField(13), 1);
    CHECK(c.N == 27);
    CHECK(c.file_size() == 81);
    CHECK(c.n() == 6);
    CHECK(c.systematic_repair_bandwidth() == 45);
    CHECK(c.lambda.size() == 2);
    for (const auto& row : c.lambda) {
        CHECK(row.size() == 3);
        for (Elem l : row) CHECK(l != 0);
    }
    for (unsigned i = 1; i <= 3; ++i) CHECK(c.lambda_at(0, i) == 1);
    const MdsReport rep = verify_mds_m(c);
    CHECK(rep.pass);
    CHECK(rep.subsets_checked == 20);
    CHECK(rep.subsets_full_rank == 20);
}

TEST_CASE("field selection") {
    CHECK(default_field_m(3, 3) == 13);
    CHECK(default_field_m(2, 3) == 7);
    CHECK(default_field_m(3, 4) == 13);
    CHECK(kind_of([] { build_code_m(2, 3, PrimeField(11), 1); }) == ErrorKind::unsupported_field);
    // No lambda makes the binary-digit ternary code MDS over F_7; the search gives up.
    CHECK(kind_of([] { build_code_m(2, 3, PrimeField(7), 1); }) == ErrorKind::insufficient_field);
    CHECK(build_code_m_auto(2, 3, 1).field.q() == 13);
    CHECK(build_code_m_auto(3, 3, 1).field.q() == 13);
}

TEST_CASE("ternary generators over F_7 use the roots 1, 2, 4") {
    const CodeDescriptorM c = make_code_m(2, 3, PrimeField(7), 0, {{1, 1}, {1, 1}});
    const auto gens = c.generators();
    REQUIRE(gens.size() == 2);
    CHECK(gens[0].diag == Vector{1, 1, 1, 2, 2, 2, 4, 4, 4});
    CHECK(gens[1].diag == Vector{1, 2, 4, 1, 2, 4, 1, 2, 4});
    for (const auto& g : gens)
        for (Elem e : g.diag) CHECK(c.field.pow(e, 3) == 1);
}

TEST_CASE("binary instance has the two-parity shape") {
    const CodeDescriptorM c = build_code_m(2, 2, PrimeField(11), 3);
    CHECK(c.N == 4);
    CHECK(c.n() == 4);
    CHECK(c.block_diag(1, 1) == vec_scale(c.field, c.generators()[0].diag, c.lambda_at(1, 1)));
    CHECK(c.block_diag(0, 2) == Vector(4, 1));
}

TEST_CASE("exhaustive check agrees with the formula-built oracle") {
    std::mt19937_64 rng(13);
    for (auto [k, m, q] : {std::tuple{2u, 2u, 5u}, {2u, 2u, 7u}, {2u, 3u, 7u}, {3u, 2u, 7u}}) {
        const PrimeField f(q);
        for (int trial = 0; trial < 6; ++trial) {
            std::vector<std::vector<Elem>> lam(m - 1, std::vector<Elem>(k));
            for (auto& row : lam)
                for (auto& v : row) v = static_cast<Elem>(1 + rng() % (q - 1));
            const CodeDescriptorM c = make_code_m(k, m, f, 0, lam);
            const MdsReport rep = verify_mds_m(c);
            bool all_full = true;
            for (const auto& subset : dc_subsets(k, m)) all_full &= oracle_dc_rank(c, subset) == k * c.N;
            CHECK(rep.pass == all_full);
            CHECK(rep.pass == diagonal_mds_screen(c.generator()));
        }
    }
}

TEST_CASE("equal lambdas fail a two-parity collector") {
    const CodeDescriptorM c = make_code_m(2, 2, PrimeField(5), 0, {{2, 2}});
    const MdsReport rep = verify_mds_m(c);
    CHECK(!rep.pass);
    REQUIRE(rep.first_failure);
    CHECK(format_subset(*rep.first_failure, 2) == "{3,4}");
    // All-systematic collectors are never the problem.
    CHECK(rep.subsets_full_rank >= 1);
}

TEST_CASE("sampling is deterministic in the seed") {
    const PrimeField f(13);
    CHECK(sample_lambda(3, 3, f, 7, 0) == sample_lambda(3, 3, f, 7, 0));
    CHECK(sample_lambda(3, 3, f, 7, 0) != sample_lambda(3, 3, f, 7, 1));
    const CodeDescriptorM a = build_code_m(3, 3, f, 42);
    const CodeDescriptorM b = build_code_m(3, 3, f, 42);
    CHECK(a.lambda == b.lambda);
    CHECK(a.seed == b.seed);
    CHECK(make_code_m(3, 3, f, a.seed, a.lambda).lambda == a.lambda);
}

TEST_CASE("encode and decode through every collector") {
    std::mt19937_64 rng(17);
    for (auto [k, m] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}, {3u, 3u}}) {
        const CodeDescriptorM c = build_code_m_auto(k, m, 1);
        const Vector f = random_vector(c.file_size(), c.field.q(), rng);
        const auto nodes = encode(c, f);
        CHECK(nodes.size() == k + m);
        for (const auto& subset : dc_subsets(k, m)) {
            std::vector<NodeContents> picked;
            for (const auto& id : subset) picked.push_back(testsupport::find(nodes, id));
            CHECK(decode_dc(c, picked) == f);
        }
    }
}

TEST_CASE("interference and useful ranks over the code generators") {
    for (auto [k, m] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}, {3u, 3u}}) {
        const CodeDescriptorM c = build_code_m_auto(k, m, 1);
        const auto gens = c.generators();
        for (unsigned i = 1; i <= k; ++i) {
            const LatticeSet V = LatticeSet::axis_slice(m, k, i);
            CHECK(realize(V, gens, c.field) == systematic_repair_matrix_m(i, c));
            for (unsigned j = 1; j <= k; ++j) {
                std::vector<LatticeSet> orbit;
                Matrix cols(c.N, 0);
                for (unsigned l = 0; l < m; ++l) {
                    orbit.push_back(lattice_shift(V, j, l));
                    cols = hconcat(cols, realize(orbit.back(), gens, c.field));
                }
                const std::size_t expect = i == j ? c.N : c.N / m;
                CHECK(predicted_rank(orbit) == expect);
                CHECK(oracle::rank(oracle::from(cols), c.field.q()) == expect);
            }
        }
    }
}

TEST_CASE("systematic repair is exact at (k+m-1) m^(k-1)") {
    std::mt19937_64 rng(23);
    for (auto [k, m] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}, {3u, 3u}, {4u, 3u}, {3u, 4u}}) {
        const CodeDescriptorM c = build_code_m_auto(k, m, 1);
        const auto nodes = encode(c, random_vector(c.file_size(), c.field.q(), rng));
        for (unsigned i = 1; i <= k; ++i) {
            CAPTURE(k);
            CAPTURE(m);
            CAPTURE(i);
            const RepairTranscript t = repair_systematic_m(i, without(nodes, NodeId::systematic(i)), c);
            CHECK(t.recovered == nodes[i - 1].data);
            CHECK(t.gamma == (k + m - 1) * (c.N / m));
            const AlignmentRanks r = alignment_ranks(plan_repair_systematic_m(i, c));
            CHECK(r.useful_rank == c.N);
            for (std::size_t ir : r.interference_ranks) CHECK(ir == c.N / m);
        }
    }
    const CodeDescriptorM small = build_code_m(2, 2, PrimeField(11), 1);
    CHECK(plan_repair_systematic_m(1, small).expected_bandwidth == 6);
}

TEST_CASE("parity repair is exact and never exceeds the file size") {
    std::mt19937_64 rng(29);
    for (auto [k, m] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}, {3u, 3u}, {4u, 3u}}) {
        const CodeDescriptorM c = build_code_m_auto(k, m, 1);
        const auto nodes = encode(c, random_vector(c.file_size(), c.field.q(), rng));
        for (unsigned p = 1; p <= m; ++p) {
            CAPTURE(k);
            CAPTURE(m);
            CAPTURE(p);
            const NodeId id = NodeId::parity(p);
            const RepairTranscript t = repair_parity_m(p, without(nodes, id), c);
            CHECK(t.recovered == testsupport::find(nodes, id).data);
            CHECK(t.gamma <= c.file_size());
            std::size_t sum = 0;
            for (const auto& tr : t.transfers) sum += tr.symbols.size();
            CHECK(sum == t.gamma);
        }
    }
}

TEST_CASE("parity repair of the six-node ternary code") {
    std::mt19937_64 rng(31);
    const CodeDescriptorM c = build_code_m(3, 3, PrimeField(13), 1);
    const auto nodes = encode(c, random_vector(81, 13, rng));
    for (unsigned p = 1; p <= 3; ++p) {
        const RepairPlan plan = plan_repair_parity_m(p, c);
        CHECK(plan.strategy == RepairStrategy::aligned);
        CHECK(plan.expected_bandwidth < 81);
        const RepairTranscript t = execute_repair(plan, without(nodes, NodeId::parity(p)));
        CHECK(t.recovered == testsupport::find(nodes, NodeId::parity(p)).data);
        CHECK(t.gamma == plan.expected_bandwidth);
    }
}

TEST_CASE("zero file gives a zero transcript") {
    const CodeDescriptorM c = build_code_m(3, 3, PrimeField(13), 1);
    const auto nodes = encode(c, Vector(81, 0));
    for (unsigned flat = 1; flat <= 6; ++flat) {
        const NodeId id = NodeId::from_flat(flat, 3, 3);
        const RepairTranscript t = repair(id, without(nodes, id), c);
        CHECK(t.recovered == Vector(27, 0));
        for (const auto& tr : t.transfers) CHECK(tr.symbols == Vector(tr.symbols.size(), 0));
    }
}

TEST_CASE("reconstruct fallback") {
    std::mt19937_64 rng(37);
    const CodeDescriptorM c = build_code_m(3, 3, PrimeField(13), 1);
    const auto nodes = encode(c, random_vector(81, 13, rng));
    const RepairPlan plan = plan_reconstruct_repair(NodeId::parity(2), c.generator());
    CHECK(plan.strategy == RepairStrategy::reconstruct);
    CHECK(plan.expected_bandwidth == 81);
    const RepairTranscript t = execute_repair(plan, without(nodes, NodeId::parity(2)));
    CHECK(t.recovered == nodes[4].data);
}

TEST_CASE("structural validation") {
    CHECK(kind_of([] { make_code_m(3, 3, PrimeField(13), 0, {{1, 1, 1}}); }) == ErrorKind::invalid_descriptor);
    CHECK(kind_of([] { make_code_m(2, 2, PrimeField(11), 0, {{0, 1}}); }) == ErrorKind::invalid_descriptor);
    CHECK(kind_of([] { make_code_m(2, 2, PrimeField(11), 0, {{11, 1}}); }) == ErrorKind::invalid_descriptor);
}

/**************************************************************************
 * test_repair2.cpp
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

#include "hmsr/repair2.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace hmsr;
using testsupport::kind_of;
using testsupport::random_vector;
using testsupport::without;

namespace {

CodeDescriptor2 code_for(unsigned k) {
    return build_code2(k, PrimeField(testsupport::smallest_prime_at_least(2 * k + 3)));
}

std::vector<NodeId> all_nodes(unsigned k) {
    std::vector<NodeId> out;
    for (unsigned flat = 1; flat <= k + 2; ++flat) out.push_back(NodeId::from_flat(flat, k, 2));
    return out;
}

std::size_t rank_of(const LatticeSet& s, const CodeDescriptor2& c) {
    return oracle::rank(oracle::from(realize(s, c.generators(), c.field)), c.field.q());
}

}  // namespace

TEST_CASE("systematic repair matrix") {
    const CodeDescriptor2 c = code_for(3);
    for (unsigned i = 1; i <= 3; ++i) {
        const Matrix V = systematic_repair_matrix(i, c);
        CHECK(V.rows() == 16);
        CHECK(V.cols() == 8);
        CHECK(V.column(0) == Vector(16, 1));
        CHECK(oracle::rank(oracle::from(V), 11) == 8);
    }
    const LatticeSet v1 = systematic_repair_points(1, 3);
    CHECK(lattice_union({v1, lattice_shift(v1, 1, 1)}).size() == 2 * v1.size());
    for (const auto& p : v1.points) CHECK(!lattice_shift(v1, 1, 1).contains(p));
    for (const auto& p : systematic_repair_points(3, 3).points) CHECK(p[2] == 0);
}

TEST_CASE("parity repair subspaces") {
    for (unsigned k = 2; k <= 5; ++k) {
        const CodeDescriptor2 c = code_for(k);
        const std::size_t N = c.N;
        const LatticeSet va = parity1_repair_points(k);
        const LatticeSet vb = parity2_repair_points(k);
        CHECK(va.size() == N / 2);
        CHECK(vb.size() == N / 2);
        CHECK(lattice_union({va, lattice_shift(va, 1, 1)}) == LatticeSet::full(2, k + 1));
        CHECK(lattice_union({vb, lattice_shift(vb, 1, 1)}) == LatticeSet::full(2, k + 1));
        CHECK(rank_of(lattice_union({va, lattice_shift(va, 1, 1)}), c) == N);
        for (unsigned s = 2; s <= k; ++s) {
            CHECK(predicted_rank({lattice_shift(va, 1, 1), lattice_shift(va, s, 1)}) == N / 2);
            CHECK(predicted_rank({lattice_shift(vb, 1, 1), lattice_shift(vb, s, 1)}) == N / 2);
        }
    }
}

TEST_CASE("transformed coding matrices") {
    const CodeDescriptor2 c = code_for(3);
    for (unsigned i = 1; i <= 3; ++i) {
        const Vector prod = vec_hadamard(c.field, c.coding_diag(i), transformed_coding_diag(i, c));
        CHECK(prod == Vector(c.N, 2));
    }
    CodeDescriptor2 bad = c;
    bad.a[0] = 0;
    CHECK(kind_of([&] { transformed_coding_diag(1, bad); }) == ErrorKind::invalid_descriptor);
    bad = c;
    bad.b[0] = c.field.add(bad.b[0], 1);
    CHECK(kind_of([&] { transformed_coding_diag(1, bad); }) == ErrorKind::invalid_descriptor);
}

TEST_CASE("every node repairs exactly at the cut-set bandwidth") {
    std::mt19937_64 rng(12);
    for (unsigned k = 2; k <= 5; ++k) {
        const CodeDescriptor2 c = code_for(k);
        for (int trial = 0; trial < 3; ++trial) {
            const auto nodes = encode(c, random_vector(c.file_size(), c.field.q(), rng));
            for (const NodeId id : all_nodes(k)) {
                CAPTURE(k);
                CAPTURE(id.label());
                const RepairTranscript t = repair(id, without(nodes, id), c);
                CHECK(t.recovered == testsupport::find(nodes, id).data);
                CHECK(t.gamma == (k + 1) * (std::size_t{1} << k));
                std::size_t sum = 0;
                for (const auto& tr : t.transfers) {
                    CHECK(tr.node != id);
                    CHECK(tr.symbols.size() == c.N / 2);
                    sum += tr.symbols.size();
                }
                CHECK(sum == t.gamma);
                CHECK(t.transfers.size() == k + 1);
            }
        }
    }
}

TEST_CASE("worked repair examples") {
    const CodeDescriptor2 c = code_for(3);
    REQUIRE(c.field.q() == 11);
    std::mt19937_64 rng(2);
    const auto nodes = encode(c, random_vector(48, 11, rng));
    CHECK(repair_systematic(2, without(nodes, NodeId::systematic(2)), c).gamma == 32);
    CHECK(repair_parity1(without(nodes, NodeId::parity(1)), c).gamma == 32);
    CHECK(repair_parity2(without(nodes, NodeId::parity(2)), c).gamma == 32);

    const CodeDescriptor2 small = code_for(2);
    REQUIRE(small.field.q() == 7);
    const RepairPlan plan = plan_repair(small, NodeId::systematic(1));
    CHECK(plan.expected_bandwidth == 12);
    CHECK(alignment_ranks(plan).useful_rank == 8);
}

TEST_CASE("a zero file transfers zeros and recovers zeros") {
    const CodeDescriptor2 c = code_for(3);
    const auto nodes = encode(c, Vector(48, 0));
    for (const NodeId id : all_nodes(3)) {
        const RepairTranscript t = repair(id, without(nodes, id), c);
        CHECK(t.recovered == Vector(16, 0));
        for (const auto& tr : t.transfers) CHECK(tr.symbols == Vector(8, 0));
    }
}

TEST_CASE("plan ranks agree with elimination") {
    for (unsigned k = 2; k <= 4; ++k) {
        const CodeDescriptor2 c = code_for(k);
        for (const NodeId id : all_nodes(k)) {
            const RepairPlan plan = plan_repair(c, id);
            CHECK(plan.expected_bandwidth == c.optimal_repair_bandwidth());
            const AlignmentRanks r = alignment_ranks(plan);
            CHECK(r.useful_rank == c.N);
            CHECK(r.useful_cols == c.N);
            CHECK(r.interference_ranks.size() == k - 1);
            for (std::size_t ir : r.interference_ranks) CHECK(ir == c.N / 2);
            for (const auto& d : plan.downloads) {
                CHECK(d.spec.rows() == c.N);
                CHECK(d.spec.cols() == c.N / 2);
                CHECK(oracle::rank(oracle::from(d.spec), c.field.q()) == c.N / 2);
            }
        }
    }
}

TEST_CASE("each transfer is a function of the sender's own symbols only") {
    std::mt19937_64 rng(5);
    const CodeDescriptor2 c = code_for(3);
    const auto nodes = encode(c, random_vector(48, 11, rng));
    for (const NodeId id : all_nodes(3)) {
        const RepairPlan plan = plan_repair(c, id);
        const RepairTranscript t = execute_repair(plan, without(nodes, id));
        REQUIRE(t.transfers.size() == plan.downloads.size());
        for (std::size_t d = 0; d < plan.downloads.size(); ++d) {
            const auto& sender = testsupport::find(nodes, plan.downloads[d].node);
            CHECK(t.transfers[d].node == plan.downloads[d].node);
            CHECK(t.transfers[d].symbols == mat_tvec(c.field, plan.downloads[d].spec, sender.data));
        }
    }
}

TEST_CASE("dropping any single download column breaks the repair") {
    std::mt19937_64 rng(9);
    for (unsigned k = 2; k <= 3; ++k) {
        const CodeDescriptor2 c = code_for(k);
        const auto nodes = encode(c, random_vector(c.file_size(), c.field.q(), rng));
        for (const NodeId id : all_nodes(k)) {
            const RepairPlan plan = plan_repair(c, id);
            for (std::size_t d = 0; d < plan.downloads.size(); ++d) {
                for (std::size_t col = 0; col < plan.downloads[d].spec.cols(); ++col) {
                    RepairPlan cut = plan;
                    cut.downloads[d].spec = cut.downloads[d].spec.drop_column(col);
                    cut.expected_bandwidth -= 1;
                    CAPTURE(id.label());
                    CAPTURE(d);
                    CAPTURE(col);
                    CHECK(kind_of([&] { execute_repair(cut, without(nodes, id)); }) == ErrorKind::construction);
                }
            }
        }
    }
}

TEST_CASE("parity 2 repair needs nonzero a_i") {
    CodeDescriptor2 c = code_for(3);
    c.a[1] = 0;
    CHECK(kind_of([&] { plan_repair(c, NodeId::parity(2)); }) == ErrorKind::invalid_descriptor);
}

TEST_CASE("missing or malformed survivors") {
    const CodeDescriptor2 c = code_for(3);
    const auto nodes = encode(c, Vector(48, 3));
    auto survivors = without(without(nodes, NodeId::systematic(1)), NodeId::systematic(2));
    CHECK(kind_of([&] { repair(NodeId::systematic(1), survivors, c); }) == ErrorKind::domain);
    survivors = without(nodes, NodeId::systematic(1));
    survivors[0].data.pop_back();
    CHECK(kind_of([&] { repair(NodeId::systematic(1), survivors, c); }) == ErrorKind::size);
}

TEST_CASE("transcript json") {
    const CodeDescriptor2 c = code_for(3);
    const auto nodes = encode(c, Vector(48, 1));
    RepairTranscript t = repair(NodeId::parity(2), without(nodes, NodeId::parity(2)), c);
    CHECK(!t.ok);  // callers set it after comparing against a reference
    t.ok = t.recovered == testsupport::find(nodes, NodeId::parity(2)).data;
    const auto j = nlohmann::json::parse(transcript_json(t, 3));
    CHECK(j["failed"] == 5);
    CHECK(j["gamma"] == 32);
    CHECK(j["ok"] == true);
    REQUIRE(j["per_node"].size() == 4);
    for (const auto& e : j["per_node"]) CHECK(e["symbols_sent"] == 8);
    CHECK(j["per_node"][0]["id"] == 1);
}

/**************************************************************************
 * repair.cpp
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

#include "hmsr/repair.hpp"

#include <algorithm>

#include "json.hpp"

namespace hmsr {

namespace {

Vector invert_scale(const PrimeField& f, const Vector& s) {
    Vector out(s.size());
    for (std::size_t t = 0; t < s.size(); ++t) {
        if (s[t] == 0) throw Error(ErrorKind::construction, "storage scaling is not invertible");
        out[t] = f.inv(s[t]);
    }
    return out;
}

const NodeContents& find_survivor(const std::vector<NodeContents>& survivors, NodeId id, std::size_t N) {
    auto it = std::find_if(survivors.begin(), survivors.end(), [&](const NodeContents& n) { return n.id == id; });
    if (it == survivors.end()) throw Error(ErrorKind::domain, "survivor " + id.label() + " is missing");
    if (it->data.size() != N) throw Error(ErrorKind::size, "survivor " + id.label() + " has wrong length");
    return *it;
}

void check_model(const AlignmentModel& m) {
    auto bad = [](const std::string& why) { throw Error(ErrorKind::construction, why); };
    if (m.target_scale.size() != m.N) bad("target scaling has wrong length");
    for (const auto& e : m.equations) {
        if (e.coeffs.size() != m.unknowns) bad("equation " + e.node.label() + " has wrong unknown count");
        if (e.storage_scale.size() != m.N) bad("equation scaling has wrong length");
        for (const auto& c : e.coeffs)
            if (c.size() != m.N) bad("equation coefficient has wrong length");
    }
    std::vector<bool> covered(m.unknowns, false);
    for (const auto& h : m.helpers) {
        if (h.unknown == 0 || h.unknown >= m.unknowns) bad("helper " + h.node.label() + " names no interferer");
        if (h.storage_scale.size() != m.N) bad("helper scaling has wrong length");
        covered[h.unknown] = true;
    }
    for (std::size_t u = 1; u < m.unknowns; ++u)
        if (!covered[u]) bad("interferer " + std::to_string(u) + " has no helper");
}

Matrix interference(const PrimeField& f, const EquationRole& e, std::size_t unknown, const Matrix& U) {
    return diag_mul(f, e.coeffs[unknown], U);
}

}  // namespace

RepairPlan plan_aligned_repair(NodeId failed, AlignmentModel model, const std::vector<Matrix>& equation_requests) {
    check_model(model);
    if (equation_requests.size() != model.equations.size())
        throw Error(ErrorKind::construction, "one request per equation node is required");
    const PrimeField& f = model.field;

    RepairPlan plan;
    plan.failed = failed;
    plan.N = model.N;
    plan.strategy = RepairStrategy::aligned;

    for (std::size_t e = 0; e < model.equations.size(); ++e) {
        const Matrix& U = equation_requests[e];
        if (U.rows() != model.N) throw Error(ErrorKind::construction, "request has wrong row count");
        const Vector inv = invert_scale(f, model.equations[e].storage_scale);
        plan.downloads.push_back({model.equations[e].node, diag_mul(f, inv, U)});
    }
    for (const auto& h : model.helpers) {
        Matrix span(model.N, 0);
        for (std::size_t e = 0; e < model.equations.size(); ++e)
            span = hconcat(span, interference(f, model.equations[e], h.unknown, equation_requests[e]));
        const Matrix W = column_basis(f, span);
        plan.downloads.push_back({h.node, diag_mul(f, invert_scale(f, h.storage_scale), W)});
    }
    for (const auto& d : plan.downloads) plan.expected_bandwidth += d.spec.cols();
    plan.model = std::move(model);
    return plan;
}

RepairPlan plan_reconstruct_repair(NodeId failed, const DiagonalCode& code) {
    RepairPlan plan;
    plan.failed = failed;
    plan.N = code.N;
    plan.strategy = RepairStrategy::reconstruct;
    plan.model.field = code.field;
    plan.model.N = code.N;
    for (unsigned flat = 1; flat <= code.n() && plan.downloads.size() < code.k; ++flat) {
        const NodeId id = NodeId::from_flat(flat, code.k, code.parities());
        if (id == failed) continue;
        plan.downloads.push_back({id, Matrix::identity(code.N)});
    }
    plan.expected_bandwidth = code.k * code.N;
    plan.reconstruct = code;
    return plan;
}

RepairTranscript execute_repair(const RepairPlan& plan, const std::vector<NodeContents>& survivors) {
    const PrimeField& f = plan.model.field;
    const std::size_t N = plan.N;

    RepairTranscript t;
    t.failed = plan.failed;
    for (const auto& d : plan.downloads) {
        if (d.node == plan.failed) throw Error(ErrorKind::construction, "plan downloads from the failed node");
        const NodeContents& src = find_survivor(survivors, d.node, N);
        if (d.spec.rows() != N) throw Error(ErrorKind::construction, "download spec has wrong row count");
        t.transfers.push_back({d.node, mat_tvec(f, d.spec, src.data)});
        t.gamma += d.spec.cols();
    }

    if (plan.strategy == RepairStrategy::reconstruct) {
        const DiagonalCode& code = *plan.reconstruct;
        std::vector<NodeContents> nodes;
        for (std::size_t j = 0; j < plan.downloads.size(); ++j) {
            if (plan.downloads[j].spec != Matrix::identity(N))
                throw Error(ErrorKind::construction, "reconstruction needs whole nodes");
            nodes.push_back({t.transfers[j].node, t.transfers[j].symbols});
        }
        if (nodes.size() != code.k) throw Error(ErrorKind::construction, "reconstruction needs k nodes");
        const Vector file = decode_dc(code, nodes);
        for (auto& n : encode(code, file))
            if (n.id == plan.failed) t.recovered = std::move(n.data);
        return t;
    }

    const AlignmentModel& m = plan.model;
    const std::size_t ne = m.equations.size();
    if (plan.downloads.size() != ne + m.helpers.size())
        throw Error(ErrorKind::construction, "plan and model disagree on the download list");

    // Back to the virtual representation: U_e and W_h as the newcomer sees them.
    std::vector<Matrix> U(ne);
    std::vector<Vector> v(ne);
    for (std::size_t e = 0; e < ne; ++e) {
        U[e] = diag_mul(f, m.equations[e].storage_scale, plan.downloads[e].spec);
        v[e] = t.transfers[e].symbols;
    }
    for (std::size_t h = 0; h < m.helpers.size(); ++h) {
        const HelperRole& role = m.helpers[h];
        const Matrix W = diag_mul(f, role.storage_scale, plan.downloads[ne + h].spec);
        const Vector& d = t.transfers[ne + h].symbols;
        for (std::size_t e = 0; e < ne; ++e) {
            Matrix T;
            try {
                T = express_in_basis(f, W, interference(f, m.equations[e], role.unknown, U[e]));
            } catch (const Error& err) {
                if (err.kind() != ErrorKind::singular) throw;
                throw Error(ErrorKind::construction,
                            "interference at " + m.equations[e].node.label() + " is not covered by " +
                                role.node.label());
            }
            v[e] = vec_sub(f, v[e], mat_tvec(f, T, d));
        }
    }

    Matrix Q(N, 0);
    Vector rhs;
    for (std::size_t e = 0; e < ne; ++e) {
        Q = hconcat(Q, diag_mul(f, m.equations[e].coeffs[0], U[e]));
        rhs.insert(rhs.end(), v[e].begin(), v[e].end());
    }
    if (Q.cols() != N)
        throw Error(ErrorKind::construction, "useful space has " + std::to_string(Q.cols()) + " columns, need " +
                                                 std::to_string(N));
    Vector z0;
    try {
        z0 = mat_solve(f, Q.transposed(), rhs);
    } catch (const Error& err) {
        if (err.kind() != ErrorKind::singular) throw;
        throw Error(ErrorKind::construction, "useful space is rank deficient");
    }
    t.recovered = vec_hadamard(f, m.target_scale, z0);
    return t;
}

AlignmentRanks alignment_ranks(const RepairPlan& plan) {
    AlignmentRanks r;
    if (plan.strategy != RepairStrategy::aligned) return r;
    const AlignmentModel& m = plan.model;
    const PrimeField& f = m.field;
    const std::size_t ne = m.equations.size();
    Matrix Q(plan.N, 0);
    for (std::size_t e = 0; e < ne; ++e) {
        const Matrix U = diag_mul(f, m.equations[e].storage_scale, plan.downloads[e].spec);
        Q = hconcat(Q, diag_mul(f, m.equations[e].coeffs[0], U));
    }
    r.useful_cols = Q.cols();
    r.useful_rank = mat_rank(f, Q);
    for (std::size_t h = 0; h < m.helpers.size(); ++h) r.interference_ranks.push_back(
        mat_rank(f, plan.downloads[ne + h].spec));
    return r;
}

std::string transcript_json(const RepairTranscript& t, unsigned k) {
    nlohmann::ordered_json j;
    j["failed"] = t.failed.flat(k);
    j["per_node"] = nlohmann::ordered_json::array();
    for (const auto& tr : t.transfers)
        j["per_node"].push_back({{"id", tr.node.flat(k)}, {"symbols_sent", tr.symbols.size()}});
    j["gamma"] = t.gamma;
    j["ok"] = t.ok;
    return j.dump(2);
}

}  // namespace hmsr

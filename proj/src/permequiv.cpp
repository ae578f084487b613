/**************************************************************************
 * permequiv.cpp
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

#include "hmsr/permequiv.hpp"

#include <algorithm>

#include "json.hpp"

namespace hmsr {

bool PermutationSpec::is_bijection() const {
    std::vector<bool> seen(mapping.size(), false);
    for (std::size_t v : mapping) {
        if (v >= mapping.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

Matrix PermutationSpec::matrix() const {
    Matrix p(N(), N());
    for (std::size_t j = 0; j < N(); ++j) p(j, mapping[j]) = 1;
    return p;
}

PermutationSpec PermutationSpec::then(const PermutationSpec& q) const {
    // (P Q)(j, c) = 1 iff c = q.mapping[mapping[j]].
    PermutationSpec out{std::vector<std::size_t>(N())};
    for (std::size_t j = 0; j < N(); ++j) out.mapping[j] = q.mapping[mapping[j]];
    return out;
}

PermutationSpec PermutationSpec::power(unsigned e) const {
    PermutationSpec out = identity(N());
    for (unsigned r = 0; r < e; ++r) out = out.then(*this);
    return out;
}

PermutationSpec PermutationSpec::identity(std::size_t N) {
    PermutationSpec p{std::vector<std::size_t>(N)};
    for (std::size_t j = 0; j < N; ++j) p.mapping[j] = j;
    return p;
}

namespace {

void require_hadamard_field(unsigned m, std::size_t N, const PrimeField& f) {
    if ((f.q() - 1) % m != 0)
        throw Error(ErrorKind::unsupported_field, std::to_string(m) + " does not divide q-1");
    if (N % f.q() == 0) throw Error(ErrorKind::degenerate_field, "N = 0 mod q");
}

unsigned lattice_dimension(std::size_t N, unsigned m) {
    unsigned L = 0;
    std::size_t n = 1;
    while (n < N) {
        n *= m;
        ++L;
    }
    if (n != N) throw Error(ErrorKind::domain, "permutation size is not a power of m");
    return L;
}

Matrix scaled(const PrimeField& f, const PermutationSpec& p, Elem s) { return mat_scale(f, p.matrix(), s); }

Matrix add(const PrimeField& f, const Matrix& a, const Matrix& b) {
    Matrix out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = f.add(a(r, c), b(r, c));
    return out;
}

}  // namespace

PermutationSpec x_to_permutation(unsigned i, unsigned m, unsigned L, const PrimeField& f) {
    if (i < 1 || i > L) throw Error(ErrorKind::domain, "axis out of range");
    const std::size_t N = ipow(m, L);
    require_hadamard_field(m, N, f);
    // Column c of H P_i must be X_i h_c = h_{x(c) + e_i}: row j carries the
    // column whose point is x(j) - e_i.
    PermutationSpec p{std::vector<std::size_t>(N)};
    for (std::size_t j = 0; j < N; ++j) {
        ExponentVector x = index_point(j, m, L);
        x[i - 1] = (x[i - 1] + m - 1) % m;
        p.mapping[j] = point_index(x, m);
    }
    return p;
}

std::optional<std::vector<Vector>> permutation_to_x(const std::vector<PermutationSpec>& perms, unsigned m,
                                                    const PrimeField& f) {
    if (perms.empty()) return std::vector<Vector>{};
    const std::size_t N = perms.front().N();
    for (const auto& p : perms) {
        if (p.N() != N) throw Error(ErrorKind::domain, "permutations differ in size");
        if (!p.is_bijection()) throw Error(ErrorKind::domain, "mapping is not a permutation");
    }
    for (std::size_t a = 0; a < perms.size(); ++a)
        for (std::size_t b = a + 1; b < perms.size(); ++b)
            if (perms[a].then(perms[b]) != perms[b].then(perms[a]))
                throw Error(ErrorKind::domain, "permutations do not commute");

    const unsigned L = lattice_dimension(N, m);
    require_hadamard_field(m, N, f);
    const HadamardMatrix h = hadamard(m, L, f);
    const Matrix hinv = hadamard_inverse(h, f);

    std::vector<Vector> out;
    for (const auto& p : perms) {
        const Matrix d = mat_mul(f, mat_mul(f, h.matrix, p.matrix()), hinv);
        Vector diag(N);
        for (std::size_t r = 0; r < N; ++r) {
            for (std::size_t c = 0; c < N; ++c)
                if (r != c && d(r, c) != 0) return std::nullopt;
            diag[r] = d(r, r);
        }
        out.push_back(std::move(diag));
    }
    return out;
}

BlockCode code_to_permutation_form(const CodeDescriptorM& code) {
    const PrimeField& f = code.field;
    BlockCode out{f, code.k, code.N, {}};
    for (unsigned r = 0; r < code.m; ++r) {
        std::vector<Matrix> row;
        for (unsigned i = 1; i <= code.k; ++i)
            row.push_back(scaled(f, x_to_permutation(i, code.m, code.k, f).power(r), code.lambda_at(r, i)));
        out.parity_blocks.push_back(std::move(row));
    }
    return out;
}

BlockCode code_to_permutation_form(const CodeDescriptor2& code) {
    const PrimeField& f = code.field;
    const unsigned L = code.k + 1;
    const PermutationSpec last = x_to_permutation(L, 2, L, f);
    BlockCode out{f, code.k, code.N, {}};
    std::vector<Matrix> first, second;
    for (unsigned i = 1; i <= code.k; ++i) {
        first.push_back(Matrix::identity(code.N));
        Matrix block = add(f, scaled(f, x_to_permutation(i, 2, L, f), code.a[i - 1]), scaled(f, last, code.b[i - 1]));
        second.push_back(add(f, block, Matrix::identity(code.N)));
    }
    out.parity_blocks = {std::move(first), std::move(second)};
    return out;
}

BlockCode conjugate_by_hadamard(const DiagonalCode& code, unsigned m, unsigned L) {
    const PrimeField& f = code.field;
    const HadamardMatrix h = hadamard(m, L, f);
    if (h.N() != code.N) throw Error(ErrorKind::domain, "Hadamard size does not match the code");
    const Matrix hinv = hadamard_inverse(h, f);
    BlockCode out{f, code.k, code.N, {}};
    for (const auto& row : code.blocks) {
        std::vector<Matrix> dense;
        for (const auto& d : row) dense.push_back(mat_mul(f, hinv, diag_mul(f, d, h.matrix)));
        out.parity_blocks.push_back(std::move(dense));
    }
    return out;
}

std::string format_permutation(const PermutationSpec& p) {
    std::string s = "[";
    for (std::size_t j = 0; j < p.N(); ++j) {
        if (j) s += ",";
        s += std::to_string(p.mapping[j] + 1);
    }
    return s + "]";
}

PermutationSpec parse_permutation(const std::string& text) {
    PermutationSpec p;
    try {
        const auto j = nlohmann::json::parse(text);
        if (!j.is_array()) throw Error(ErrorKind::format, "permutation must be a JSON array");
        for (const auto& v : j) {
            if (!v.is_number_unsigned() || v.get<std::size_t>() == 0)
                throw Error(ErrorKind::format, "permutation entries are 1-based indices");
            p.mapping.push_back(v.get<std::size_t>() - 1);
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::format, std::string("bad permutation: ") + e.what());
    }
    if (!p.is_bijection()) throw Error(ErrorKind::format, "mapping is not a permutation");
    return p;
}

}  // namespace hmsr

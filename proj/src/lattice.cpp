/**************************************************************************
 * lattice.cpp
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

#include "hmsr/lattice.hpp"

#include <ostream>
#include <string>

namespace hmsr {

namespace {

void check_axis(unsigned axis, unsigned L) {
    if (axis < 1 || axis > L)
        throw Error(ErrorKind::domain,
                    "axis " + std::to_string(axis) + " outside 1.." + std::to_string(L));
}

std::string point_label(const ExponentVector& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(p[i]);
    }
    return s + ")";
}

}  // namespace

std::size_t ipow(unsigned m, unsigned L) {
    std::size_t n = 1;
    for (unsigned i = 0; i < L; ++i) {
        n *= m;
        if (n > (1u << 24)) throw Error(ErrorKind::domain, "lattice dimension too large");
    }
    return n;
}

std::size_t point_index(const ExponentVector& x, unsigned m) {
    std::size_t idx = 0;
    for (unsigned v : x.x) idx = idx * m + (v % m);
    return idx;
}

ExponentVector index_point(std::size_t index, unsigned m, unsigned L) {
    ExponentVector p{std::vector<unsigned>(L, 0)};
    for (unsigned i = L; i-- > 0;) {
        p[i] = static_cast<unsigned>(index % m);
        index /= m;
    }
    return p;
}

ExponentVector unit_point(unsigned i, unsigned L) {
    check_axis(i, L);
    ExponentVector p{std::vector<unsigned>(L, 0)};
    p[i - 1] = 1;
    return p;
}

LatticeSet LatticeSet::full(unsigned m, unsigned L) {
    LatticeSet s{m, L, {}};
    const std::size_t n = ipow(m, L);
    for (std::size_t t = 0; t < n; ++t) s.points.insert(index_point(t, m, L));
    return s;
}

LatticeSet LatticeSet::axis_slice(unsigned m, unsigned L, unsigned axis) {
    check_axis(axis, L);
    LatticeSet s{m, L, {}};
    const std::size_t n = ipow(m, L);
    for (std::size_t t = 0; t < n; ++t) {
        ExponentVector p = index_point(t, m, L);
        if (p[axis - 1] == 0) s.points.insert(std::move(p));
    }
    return s;
}

DiagGenerator x_diag(unsigned i, unsigned L, unsigned m, const PrimeField& f) {
    check_axis(i, L);
    const std::vector<Elem> roots = roots_of_unity(f, m);
    const std::size_t n = ipow(m, L);
    const std::size_t block = n / ipow(m, i);
    DiagGenerator g{i, m, L, Vector(n)};
    for (std::size_t t = 0; t < n; ++t) g.diag[t] = roots[(t / block) % m];
    return g;
}

std::vector<DiagGenerator> x_generators(unsigned L, unsigned m, const PrimeField& f) {
    std::vector<DiagGenerator> gens;
    gens.reserve(L);
    for (unsigned i = 1; i <= L; ++i) gens.push_back(x_diag(i, L, m, f));
    return gens;
}

HadamardMatrix hadamard(unsigned m, unsigned L, const PrimeField& f) {
    const std::vector<Elem> roots = roots_of_unity(f, m);
    const std::size_t n = ipow(m, L);
    if (n % f.q() == 0)
        throw Error(ErrorKind::degenerate_field,
                    "N = " + std::to_string(n) + " vanishes mod q = " + std::to_string(f.q()));
    HadamardMatrix h{m, L, Matrix(n, n)};
    std::vector<ExponentVector> digits;
    digits.reserve(n);
    for (std::size_t t = 0; t < n; ++t) digits.push_back(index_point(t, m, L));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            unsigned e = 0;
            for (unsigned i = 0; i < L; ++i) e += digits[r][i] * digits[c][i];
            h.matrix(r, c) = roots[e % m];
        }
    }
    return h;
}

Matrix hadamard_conjugate_transpose(const HadamardMatrix& h, const PrimeField& f) {
    const std::size_t n = h.N();
    Matrix out(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            const Elem v = h.matrix(r, c);
            // v = rho^j; conj(v) = rho^{m-j} = v^{-1}.
            out(c, r) = f.inv(v);
        }
    }
    return out;
}

Matrix hadamard_inverse(const HadamardMatrix& h, const PrimeField& f) {
    return mat_scale(f, hadamard_conjugate_transpose(h, f), f.inv(static_cast<Elem>(h.N() % f.q())));
}

Vector point_to_column(const ExponentVector& p, const std::vector<DiagGenerator>& gens, const PrimeField& f) {
    if (p.size() != gens.size()) throw Error(ErrorKind::size, "exponent vector length != generator count");
    if (gens.empty()) return Vector{1};
    const std::size_t n = gens.front().N();
    Vector col(n, 1);
    for (std::size_t a = 0; a < gens.size(); ++a) {
        const unsigned power = p[a] % gens[a].m;
        for (unsigned r = 0; r < power; ++r)
            for (std::size_t t = 0; t < n; ++t) col[t] = f.mul(col[t], gens[a].diag[t]);
    }
    return col;
}

Matrix realize(const LatticeSet& s, const std::vector<DiagGenerator>& gens, const PrimeField& f) {
    std::vector<Vector> cols;
    cols.reserve(s.size());
    for (const auto& p : s.points) cols.push_back(point_to_column(p, gens, f));
    const std::size_t n = gens.empty() ? 1 : gens.front().N();
    return Matrix::from_columns(cols, n);
}

LatticeSet lattice_shift(const LatticeSet& s, unsigned axis, unsigned power) {
    check_axis(axis, s.L);
    LatticeSet out{s.m, s.L, {}};
    for (ExponentVector p : s.points) {
        p[axis - 1] = (p[axis - 1] + power) % s.m;
        out.points.insert(std::move(p));
    }
    return out;
}

LatticeSet lattice_shift(const LatticeSet& s, const ExponentVector& powers) {
    if (powers.size() != s.L) throw Error(ErrorKind::size, "shift vector length != L");
    LatticeSet out{s.m, s.L, {}};
    for (ExponentVector p : s.points) {
        for (unsigned a = 0; a < s.L; ++a) p[a] = (p[a] + powers[a]) % s.m;
        out.points.insert(std::move(p));
    }
    return out;
}

LatticeSet lattice_union(const std::vector<LatticeSet>& sets) {
    if (sets.empty()) return {};
    LatticeSet out{sets.front().m, sets.front().L, {}};
    for (const auto& s : sets) {
        if (s.m != out.m || s.L != out.L) throw Error(ErrorKind::domain, "lattice sets differ in m or L");
        out.points.insert(s.points.begin(), s.points.end());
    }
    return out;
}

std::size_t predicted_rank(const std::vector<LatticeSet>& sets) { return lattice_union(sets).size(); }

void write_csv(std::ostream& os, const LatticeSet& s) {
    for (const auto& p : s.points) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i) os << ',';
            os << p[i];
        }
        os << '\n';
    }
}

void write_dot(std::ostream& os, const std::vector<NamedSet>& sets, unsigned shift_axis) {
    os << "digraph lattice {\n  node [shape=point];\n";
    for (std::size_t si = 0; si < sets.size(); ++si) {
        const auto& ns = sets[si];
        os << "  subgraph cluster_" << si << " {\n    label=\"" << ns.name << "\";\n";
        for (const auto& p : ns.set.points) {
            os << "    \"" << ns.name << point_label(p) << "\" [xlabel=\"" << point_label(p) << "\"";
            if (p.size() == 2) os << ", pos=\"" << p[0] << ',' << p[1] << "!\"";
            os << "];\n";
        }
        os << "  }\n";
        if (shift_axis >= 1 && shift_axis <= ns.set.L) {
            for (const auto& p : ns.set.points) {
                ExponentVector next = p;
                next[shift_axis - 1] = (next[shift_axis - 1] + 1) % ns.set.m;
                if (ns.set.contains(next))
                    os << "  \"" << ns.name << point_label(p) << "\" -> \"" << ns.name << point_label(next)
                       << "\";\n";
            }
        }
    }
    os << "}\n";
}

}  // namespace hmsr

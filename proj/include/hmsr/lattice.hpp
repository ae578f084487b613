/**************************************************************************
 * lattice.hpp
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
 * Diagonal root-of-unity generators X_1..X_L of dimension N = m^L, the
 * Sylvester / DFT Hadamard matrix they generate, and the exponent-lattice
 * picture of products prod_i X_i^{x_i} w (w the all-ones vector).
 *
 * Index convention: position t in [0, N) has base-m digits d_1(t)..d_L(t)
 * with d_1 the most significant. X_i has entry rho^{d_i(t)} at position t,
 * and the column for exponent vector x has entry rho^{sum_i x_i d_i(t)}.
 * Hadamard columns are listed in this same canonical order.
 */

#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "hmsr/gf.hpp"

namespace hmsr {

/// A diagonal X_i held as its length-N diagonal.
struct DiagGenerator {
    unsigned index = 0;  // 1-based axis
    unsigned m = 0;
    unsigned L = 0;
    Vector diag;

    std::size_t N() const noexcept { return diag.size(); }
};

/// Exponent tuple (x_1..x_L), each coordinate reduced mod m.
struct ExponentVector {
    std::vector<unsigned> x;

    unsigned& operator[](std::size_t i) { return x[i]; }
    unsigned operator[](std::size_t i) const { return x[i]; }
    std::size_t size() const noexcept { return x.size(); }

    auto operator<=>(const ExponentVector&) const = default;
    bool operator==(const ExponentVector&) const = default;
};

/// Canonical column index of x (base-m, x_1 most significant).
std::size_t point_index(const ExponentVector& x, unsigned m);
ExponentVector index_point(std::size_t index, unsigned m, unsigned L);

/// Axis i unit vector e_i (1-based), length L.
ExponentVector unit_point(unsigned i, unsigned L);

struct LatticeSet {
    unsigned m = 2;
    unsigned L = 0;
    std::set<ExponentVector> points;

    std::size_t size() const noexcept { return points.size(); }
    bool contains(const ExponentVector& p) const { return points.contains(p); }

    /// Every point of {0..m-1}^L.
    static LatticeSet full(unsigned m, unsigned L);
    /// Points whose coordinate `axis` (1-based) is zero.
    static LatticeSet axis_slice(unsigned m, unsigned L, unsigned axis);

    friend bool operator==(const LatticeSet&, const LatticeSet&) = default;
};

/// Small integer power m^L; throws ErrorKind::domain on overflow past 2^24.
std::size_t ipow(unsigned m, unsigned L);

DiagGenerator x_diag(unsigned i, unsigned L, unsigned m, const PrimeField& f);
/// X_1..X_L.
std::vector<DiagGenerator> x_generators(unsigned L, unsigned m, const PrimeField& f);

struct HadamardMatrix {
    unsigned m = 2;
    unsigned L = 0;
    Matrix matrix;  // N x N, canonical column order

    std::size_t N() const noexcept { return matrix.rows(); }
};

/// Throws ErrorKind::degenerate_field when N == 0 mod q and
/// ErrorKind::unsupported_field when m does not divide q-1.
HadamardMatrix hadamard(unsigned m, unsigned L, const PrimeField& f);
/// Entrywise conjugate rho^j -> rho^{m-j}, transposed. H * conj = N * I.
Matrix hadamard_conjugate_transpose(const HadamardMatrix& h, const PrimeField& f);
/// H^{-1} = N^{-1} * conj(H)^T.
Matrix hadamard_inverse(const HadamardMatrix& h, const PrimeField& f);

/// prod_i X_i^{p_i} w with w the all-ones vector (elementwise products only).
Vector point_to_column(const ExponentVector& p, const std::vector<DiagGenerator>& gens, const PrimeField& f);
/// Columns for each point of the set, in set order.
Matrix realize(const LatticeSet& s, const std::vector<DiagGenerator>& gens, const PrimeField& f);

/// Adds `power` to coordinate `axis` (1-based) of every point, mod m.
LatticeSet lattice_shift(const LatticeSet& s, unsigned axis, unsigned power);
/// Shifts along several axes at once: coordinate a gains powers[a] (length L).
LatticeSet lattice_shift(const LatticeSet& s, const ExponentVector& powers);

LatticeSet lattice_union(const std::vector<LatticeSet>& sets);

/// |union of the sets|: the rank of the concatenated realized columns, since
/// distinct lattice points realize mutually orthogonal Hadamard columns.
std::size_t predicted_rank(const std::vector<LatticeSet>& sets);

/// CSV dump: one `x_1,...,x_L` line per point.
void write_csv(std::ostream& os, const LatticeSet& s);
/// DOT digraph: named point sets as clusters, optional shift edges along `axis`.
struct NamedSet {
    std::string name;
    LatticeSet set;
};
void write_dot(std::ostream& os, const std::vector<NamedSet>& sets, unsigned shift_axis = 0);

}  // namespace hmsr

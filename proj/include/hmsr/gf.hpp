/**************************************************************************
 * gf.hpp
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
 * Prime-field arithmetic and dense linear algebra over F_q.
 *
 * Field elements are plain residues in [0, q) carried as `Elem`; the field
 * object owns the modulus and performs every operation. -1 is written q-1.
 * Gaussian elimination here is the reference oracle for every rank claim
 * made elsewhere in the library.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hmsr/error.hpp"

namespace hmsr {

using Elem = std::uint32_t;
using Vector = std::vector<Elem>;

/// Moduli are restricted to primes below 2^16 so a symbol fits in 2 octets.
inline constexpr std::uint32_t kMaxModulus = 1u << 16;

bool is_prime(std::uint32_t n);

class PrimeField {
public:
    /// Throws ErrorKind::domain unless q is an odd prime < 2^16.
    explicit PrimeField(std::uint32_t q);

    std::uint32_t q() const noexcept { return q_; }

    Elem reduce(std::int64_t v) const noexcept {
        auto r = v % static_cast<std::int64_t>(q_);
        return static_cast<Elem>(r < 0 ? r + q_ : r);
    }
    Elem add(Elem a, Elem b) const noexcept {
        Elem s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    Elem sub(Elem a, Elem b) const noexcept { return a >= b ? a - b : a + q_ - b; }
    Elem neg(Elem a) const noexcept { return a == 0 ? 0 : q_ - a; }
    Elem mul(Elem a, Elem b) const noexcept {
        return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % q_);
    }
    /// Extended Euclid. Throws ErrorKind::domain for a == 0.
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t e) const noexcept;

    /// (q-1) mod q, the field's -1.
    Elem minus_one() const noexcept { return q_ - 1; }

    /// True iff v already lies in [0, q).
    bool contains(std::uint64_t v) const noexcept { return v < q_; }

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    std::uint32_t q_;
};

/// Row-major dense matrix over F_q. The field is supplied per operation.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<Elem> data);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const Elem> diag);
    /// Builds a matrix whose columns are the given vectors (all of equal length).
    static Matrix from_columns(std::span<const Vector> columns, std::size_t rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    Vector column(std::size_t c) const;
    const std::vector<Elem>& data() const noexcept { return data_; }

    Matrix transposed() const;
    /// Keeps the listed columns, in the given order.
    Matrix select_columns(std::span<const std::size_t> idx) const;
    Matrix drop_column(std::size_t c) const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Elem> data_;
};

Matrix mat_mul(const PrimeField& f, const Matrix& a, const Matrix& b);
Vector mat_vec(const PrimeField& f, const Matrix& a, std::span<const Elem> x);
/// a^T x without materialising the transpose.
Vector mat_tvec(const PrimeField& f, const Matrix& a, std::span<const Elem> x);
Matrix mat_scale(const PrimeField& f, const Matrix& a, Elem s);
/// Left-multiplies by diag(d): row r is scaled by d[r].
Matrix diag_mul(const PrimeField& f, std::span<const Elem> d, const Matrix& a);
/// [a | b]
Matrix hconcat(const Matrix& a, const Matrix& b);
/// [a ; b]
Matrix vconcat(const Matrix& a, const Matrix& b);

/// Reduced row-echelon form with leftmost-nonzero pivoting.
struct Echelon {
    Matrix reduced;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank() const noexcept { return pivot_cols.size(); }
};
Echelon row_reduce(const PrimeField& f, Matrix m);

std::size_t mat_rank(const PrimeField& f, const Matrix& m);

/// Solves A x = b for square full-rank A. Throws ErrorKind::singular otherwise.
Vector mat_solve(const PrimeField& f, const Matrix& a, std::span<const Elem> b);

/// Inverse of a square full-rank matrix. Throws ErrorKind::singular otherwise.
Matrix mat_inverse(const PrimeField& f, const Matrix& a);

/// Finds T with basis * T == target. `basis` must have full column rank and
/// every column of `target` must lie in its span (ErrorKind::singular otherwise).
Matrix express_in_basis(const PrimeField& f, const Matrix& basis, const Matrix& target);

/// Columns of m at the pivot positions of its echelon form: a column basis
/// drawn from m itself.
Matrix column_basis(const PrimeField& f, const Matrix& m);

/// (rho^0, ..., rho^{m-1}) for the smallest rho of multiplicative order m.
/// Throws ErrorKind::unsupported_field unless m divides q-1.
std::vector<Elem> roots_of_unity(const PrimeField& f, std::uint32_t m);

// Elementwise helpers over equal-length vectors.
Vector vec_add(const PrimeField& f, std::span<const Elem> a, std::span<const Elem> b);
Vector vec_sub(const PrimeField& f, std::span<const Elem> a, std::span<const Elem> b);
Vector vec_hadamard(const PrimeField& f, std::span<const Elem> a, std::span<const Elem> b);
Vector vec_scale(const PrimeField& f, std::span<const Elem> a, Elem s);

}  // namespace hmsr

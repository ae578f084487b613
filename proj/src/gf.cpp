/**************************************************************************
 * gf.cpp
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

#include "hmsr/gf.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace hmsr {

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint32_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

PrimeField::PrimeField(std::uint32_t q) : q_(q) {
    if (q < 3 || q >= kMaxModulus || !is_prime(q))
        throw Error(ErrorKind::domain,
                    "modulus " + std::to_string(q) + " is not an odd prime below 65536");
}

Elem PrimeField::inv(Elem a) const {
    if (a % q_ == 0) throw Error(ErrorKind::domain, "inverse of zero");
    std::int64_t r0 = q_, r1 = a % q_;
    std::int64_t t0 = 0, t1 = 1;
    while (r1 != 0) {
        std::int64_t quot = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - quot * r1);
        std::tie(t0, t1) = std::make_pair(t1, t0 - quot * t1);
    }
    return reduce(t0);
}

Elem PrimeField::pow(Elem a, std::uint64_t e) const noexcept {
    Elem result = 1 % q_;
    Elem base = a % q_;
    while (e) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

// --- Matrix ---------------------------------------------------------------

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Elem> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw Error(ErrorKind::size, "matrix data length mismatch");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::diagonal(std::span<const Elem> diag) {
    Matrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

Matrix Matrix::from_columns(std::span<const Vector> columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows) throw Error(ErrorKind::size, "column length mismatch");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
    }
    return m;
}

Vector Matrix::column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::select_columns(std::span<const std::size_t> idx) const {
    Matrix m(rows_, idx.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t j = 0; j < idx.size(); ++j) m(r, j) = (*this)(r, idx[j]);
    return m;
}

Matrix Matrix::drop_column(std::size_t c) const {
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < cols_; ++j)
        if (j != c) keep.push_back(j);
    return select_columns(keep);
}

// --- products -------------------------------------------------------------

Matrix mat_mul(const PrimeField& f, const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw Error(ErrorKind::size, "mat_mul: inner dimension mismatch");
    Matrix out(a.rows(), b.cols());
    const std::uint64_t q = f.q();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            std::uint64_t acc = 0;
            for (std::size_t t = 0; t < a.cols(); ++t) {
                acc += static_cast<std::uint64_t>(a(i, t)) * b(t, j);
                if (acc >= (1ull << 62)) acc %= q;
            }
            out(i, j) = static_cast<Elem>(acc % q);
        }
    }
    return out;
}

Vector mat_vec(const PrimeField& f, const Matrix& a, std::span<const Elem> x) {
    if (a.cols() != x.size()) throw Error(ErrorKind::size, "mat_vec: length mismatch");
    Vector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::uint64_t acc = 0;
        for (std::size_t t = 0; t < a.cols(); ++t) acc += static_cast<std::uint64_t>(a(i, t)) * x[t];
        out[i] = static_cast<Elem>(acc % f.q());
    }
    return out;
}

Vector mat_tvec(const PrimeField& f, const Matrix& a, std::span<const Elem> x) {
    if (a.rows() != x.size()) throw Error(ErrorKind::size, "mat_tvec: length mismatch");
    std::vector<std::uint64_t> acc(a.cols(), 0);
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) acc[c] += static_cast<std::uint64_t>(a(r, c)) * x[r];
    Vector out(a.cols());
    for (std::size_t c = 0; c < a.cols(); ++c) out[c] = static_cast<Elem>(acc[c] % f.q());
    return out;
}

Matrix mat_scale(const PrimeField& f, const Matrix& a, Elem s) {
    Matrix out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = f.mul(a(r, c), s);
    return out;
}

Matrix diag_mul(const PrimeField& f, std::span<const Elem> d, const Matrix& a) {
    if (d.size() != a.rows()) throw Error(ErrorKind::size, "diag_mul: length mismatch");
    Matrix out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = f.mul(d[r], a(r, c));
    return out;
}

Matrix hconcat(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw Error(ErrorKind::size, "hconcat: row mismatch");
    Matrix out(a.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
        for (std::size_t c = 0; c < b.cols(); ++c) out(r, a.cols() + c) = b(r, c);
    }
    return out;
}

Matrix vconcat(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw Error(ErrorKind::size, "vconcat: column mismatch");
    std::vector<Elem> data(a.data());
    data.insert(data.end(), b.data().begin(), b.data().end());
    return Matrix(a.rows() + b.rows(), a.cols(), std::move(data));
}

// --- elimination ----------------------------------------------------------

Echelon row_reduce(const PrimeField& f, Matrix m) {
    Echelon e;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t pr = 0;
    for (std::size_t c = 0; c < cols && pr < rows; ++c) {
        std::size_t p = pr;
        while (p < rows && m(p, c) == 0) ++p;
        if (p == rows) continue;
        if (p != pr)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(pr, j));
        const Elem inv = f.inv(m(pr, c));
        for (std::size_t j = c; j < cols; ++j) m(pr, j) = f.mul(m(pr, j), inv);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == pr || m(r, c) == 0) continue;
            const Elem factor = m(r, c);
            for (std::size_t j = c; j < cols; ++j) m(r, j) = f.sub(m(r, j), f.mul(factor, m(pr, j)));
        }
        e.pivot_cols.push_back(c);
        ++pr;
    }
    e.reduced = std::move(m);
    return e;
}

std::size_t mat_rank(const PrimeField& f, const Matrix& m) {
    // Forward elimination only; cheaper than the full reduced form.
    Matrix a = m;
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && a(p, c) == 0) ++p;
        if (p == rows) continue;
        if (p != rank)
            for (std::size_t j = c; j < cols; ++j) std::swap(a(p, j), a(rank, j));
        const Elem inv = f.inv(a(rank, c));
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (a(r, c) == 0) continue;
            const Elem factor = f.mul(a(r, c), inv);
            for (std::size_t j = c; j < cols; ++j) a(r, j) = f.sub(a(r, j), f.mul(factor, a(rank, j)));
        }
        ++rank;
    }
    return rank;
}

Vector mat_solve(const PrimeField& f, const Matrix& a, std::span<const Elem> b) {
    if (a.rows() != a.cols()) throw Error(ErrorKind::singular, "mat_solve: matrix is not square");
    if (b.size() != a.rows()) throw Error(ErrorKind::size, "mat_solve: right-hand side length mismatch");
    const std::size_t n = a.rows();
    Matrix aug(n, n + 1);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
        aug(r, n) = b[r] % f.q();
    }
    Echelon e = row_reduce(f, std::move(aug));
    if (e.rank() < n || e.pivot_cols[n - 1] != n - 1)
        throw Error(ErrorKind::singular, "mat_solve: matrix is singular");
    Vector x(n);
    for (std::size_t r = 0; r < n; ++r) x[r] = e.reduced(r, n);
    return x;
}

Matrix mat_inverse(const PrimeField& f, const Matrix& a) {
    if (a.rows() != a.cols()) throw Error(ErrorKind::singular, "mat_inverse: matrix is not square");
    const std::size_t n = a.rows();
    Echelon e = row_reduce(f, hconcat(a, Matrix::identity(n)));
    if (e.rank() < n || e.pivot_cols[n - 1] != n - 1)
        throw Error(ErrorKind::singular, "mat_inverse: matrix is singular");
    Matrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv(r, c) = e.reduced(r, n + c);
    return inv;
}

Matrix express_in_basis(const PrimeField& f, const Matrix& basis, const Matrix& target) {
    if (basis.rows() != target.rows()) throw Error(ErrorKind::size, "express_in_basis: row mismatch");
    const std::size_t k = basis.cols();
    Echelon e = row_reduce(f, hconcat(basis, target));
    // Every basis column must pivot; no target column may.
    if (e.rank() != k || (k > 0 && e.pivot_cols[k - 1] != k - 1))
        throw Error(ErrorKind::singular, "express_in_basis: basis is rank deficient");
    Matrix t(k, target.cols());
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < target.cols(); ++c) t(r, c) = e.reduced(r, k + c);
    return t;
}

Matrix column_basis(const PrimeField& f, const Matrix& m) {
    Echelon e = row_reduce(f, m);
    return m.select_columns(e.pivot_cols);
}

std::vector<Elem> roots_of_unity(const PrimeField& f, std::uint32_t m) {
    if (m == 0 || (f.q() - 1) % m != 0)
        throw Error(ErrorKind::unsupported_field,
                    std::to_string(m) + " does not divide q-1 = " + std::to_string(f.q() - 1));
    Elem rho = 1;
    if (m > 1) {
        for (Elem x = 2; x < f.q(); ++x) {
            if (f.pow(x, m) != 1) continue;
            bool exact_order = true;
            Elem acc = 1;
            for (std::uint32_t d = 1; d < m; ++d) {
                acc = f.mul(acc, x);
                if (acc == 1) {
                    exact_order = false;
                    break;
                }
            }
            if (exact_order) {
                rho = x;
                break;
            }
        }
    }
    std::vector<Elem> roots(m);
    Elem acc = 1;
    for (std::uint32_t j = 0; j < m; ++j) {
        roots[j] = acc;
        acc = f.mul(acc, rho);
    }
    return roots;
}

Vector vec_add(const PrimeField& f, std::span<const Elem> a, std::span<const Elem> b) {
    if (a.size() != b.size()) throw Error(ErrorKind::size, "vec_add: length mismatch");
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.add(a[i], b[i]);
    return out;
}

Vector vec_sub(const PrimeField& f, std::span<const Elem> a, std::span<const Elem> b) {
    if (a.size() != b.size()) throw Error(ErrorKind::size, "vec_sub: length mismatch");
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.sub(a[i], b[i]);
    return out;
}

Vector vec_hadamard(const PrimeField& f, std::span<const Elem> a, std::span<const Elem> b) {
    if (a.size() != b.size()) throw Error(ErrorKind::size, "vec_hadamard: length mismatch");
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.mul(a[i], b[i]);
    return out;
}

Vector vec_scale(const PrimeField& f, std::span<const Elem> a, Elem s) {
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.mul(a[i], s);
    return out;
}

}  // namespace hmsr

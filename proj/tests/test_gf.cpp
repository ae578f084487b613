/**************************************************************************
 * test_gf.cpp
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

#include <set>

#include "hmsr/gf.hpp"
#include "support.hpp"

using namespace hmsr;
using testsupport::kind_of;
using testsupport::to_matrix;

TEST_CASE("primality agrees with trial division") {
    for (std::uint32_t n = 0; n < 2000; ++n) CHECK(is_prime(n) == oracle::trial_prime(n));
}

TEST_CASE("field construction rejects non-primes, 2 and moduli past 16 bits") {
    CHECK(kind_of([] { PrimeField f(9); }) == ErrorKind::domain);
    CHECK(kind_of([] { PrimeField f(2); }) == ErrorKind::domain);
    CHECK(kind_of([] { PrimeField f(1); }) == ErrorKind::domain);
    CHECK(kind_of([] { PrimeField f(65537); }) == ErrorKind::domain);
    CHECK(PrimeField(65521).q() == 65521);
}

TEST_CASE("field arithmetic matches integer arithmetic mod q") {
    for (std::uint32_t q : {3u, 7u, 11u, 13u, 257u}) {
        PrimeField f(q);
        for (Elem a = 0; a < std::min<Elem>(q, 40); ++a) {
            for (Elem b = 0; b < std::min<Elem>(q, 40); ++b) {
                CHECK(f.add(a, b) == oracle::mod(std::int64_t(a) + b, q));
                CHECK(f.sub(a, b) == oracle::mod(std::int64_t(a) - b, q));
                CHECK(f.mul(a, b) == oracle::mod(std::int64_t(a) * b, q));
            }
            CHECK(f.neg(a) == oracle::mod(-std::int64_t(a), q));
            if (a != 0) {
                CHECK(f.inv(a) == oracle::brute_inverse(a, q));
                CHECK(f.pow(a, q - 1) == 1);
            }
        }
        CHECK(f.minus_one() == q - 1);
        CHECK(kind_of([&] { f.inv(0); }) == ErrorKind::domain);
    }
}

TEST_CASE("rank agrees with the last-pivot column elimination oracle") {
    std::mt19937_64 rng(7);
    for (std::uint32_t q : {3u, 11u, 13u}) {
        PrimeField f(q);
        for (int trial = 0; trial < 60; ++trial) {
            const std::size_t rows = 1 + rng() % 9, cols = 1 + rng() % 9, inner = 1 + rng() % 9;
            // Products of random factors give deliberately low-rank inputs.
            const auto a = oracle::mul(oracle::random_mat(rows, inner, q, rng),
                                       oracle::random_mat(inner, cols, q, rng), q);
            CHECK(mat_rank(f, to_matrix(a)) == oracle::rank(a, q));
            CHECK(row_reduce(f, to_matrix(a)).rank() == oracle::rank(a, q));
        }
    }
}

TEST_CASE("row reduction yields reduced echelon form with leftmost pivots") {
    PrimeField f(11);
    std::mt19937_64 rng(3);
    const Matrix a = to_matrix(oracle::mul(oracle::random_mat(5, 3, 11, rng), oracle::random_mat(3, 7, 11, rng), 11));
    const Echelon e = row_reduce(f, a);
    for (std::size_t r = 0; r < e.rank(); ++r) {
        const std::size_t p = e.pivot_cols[r];
        CHECK(e.reduced(r, p) == 1);
        for (std::size_t c = 0; c < p; ++c) CHECK(e.reduced(r, c) == 0);
        for (std::size_t other = 0; other < e.reduced.rows(); ++other)
            if (other != r) CHECK(e.reduced(other, p) == 0);
        if (r > 0) CHECK(p > e.pivot_cols[r - 1]);
    }
    for (std::size_t r = e.rank(); r < e.reduced.rows(); ++r)
        for (std::size_t c = 0; c < e.reduced.cols(); ++c) CHECK(e.reduced(r, c) == 0);
}

TEST_CASE("solve and inverse round trip; singular systems are reported") {
    PrimeField f(13);
    std::mt19937_64 rng(11);
    int solved = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + rng() % 8;
        const auto a = oracle::random_mat(n, n, 13, rng);
        const Vector x = testsupport::random_vector(n, 13, rng);
        const Matrix A = to_matrix(a);
        const Vector b = mat_vec(f, A, x);
        if (oracle::rank(a, 13) == n) {
            CHECK(mat_solve(f, A, b) == x);
            CHECK(mat_mul(f, mat_inverse(f, A), A) == Matrix::identity(n));
            ++solved;
        } else {
            CHECK(kind_of([&] { mat_solve(f, A, b); }) == ErrorKind::singular);
        }
    }
    CHECK(solved > 20);
    CHECK(kind_of([&] { mat_solve(f, Matrix(2, 3), Vector{1, 2}); }) == ErrorKind::singular);
}

TEST_CASE("express_in_basis and column_basis") {
    PrimeField f(11);
    std::mt19937_64 rng(5);
    const Matrix basis = to_matrix(oracle::random_mat(6, 3, 11, rng));
    REQUIRE(mat_rank(f, basis) == 3);
    const Matrix coeff = to_matrix(oracle::random_mat(3, 4, 11, rng));
    const Matrix target = mat_mul(f, basis, coeff);
    CHECK(express_in_basis(f, basis, target) == coeff);

    Matrix outside(6, 1);
    for (std::size_t r = 0; r < 6; ++r) outside(r, 0) = static_cast<Elem>(rng() % 11);
    if (mat_rank(f, hconcat(basis, outside)) == 4)
        CHECK(kind_of([&] { express_in_basis(f, basis, outside); }) == ErrorKind::singular);

    const Matrix wide = hconcat(basis, target);
    const Matrix cb = column_basis(f, wide);
    CHECK(cb.cols() == 3);
    CHECK(cb == basis);  // pivots land on the first three columns
}

TEST_CASE("transposed products and elementwise helpers") {
    PrimeField f(7);
    std::mt19937_64 rng(2);
    const Matrix a = to_matrix(oracle::random_mat(4, 3, 7, rng));
    const Vector x = testsupport::random_vector(4, 7, rng);
    CHECK(mat_tvec(f, a, x) == mat_vec(f, a.transposed(), x));
    const Vector d{1, 2, 3, 4};
    CHECK(diag_mul(f, d, a) == mat_mul(f, Matrix::diagonal(d), a));
    CHECK(vec_hadamard(f, Vector{2, 3}, Vector{4, 5}) == Vector{1, 1});
    CHECK(vec_sub(f, Vector{0, 6}, Vector{1, 6}) == Vector{6, 0});
}

TEST_CASE("roots of unity") {
    CHECK(roots_of_unity(PrimeField(7), 3) == std::vector<Elem>{1, 2, 4});
    CHECK(roots_of_unity(PrimeField(11), 2) == std::vector<Elem>{1, 10});
    for (std::uint32_t q : {7u, 13u, 31u})
        for (std::uint32_t m : {2u, 3u, 5u, 6u}) {
            if ((q - 1) % m != 0) {
                CHECK(kind_of([&] { roots_of_unity(PrimeField(q), m); }) == ErrorKind::unsupported_field);
                continue;
            }
            const auto r = roots_of_unity(PrimeField(q), m);
            CHECK(r[1] == oracle::primitive_root_of_order(m, q));
        }
}

TEST_CASE("worked examples") {
    PrimeField f(11);
    CHECK(f.inv(1) == 1);
    CHECK(f.inv(2) == 6);
    CHECK(f.inv(3) == 4);
    CHECK(mat_rank(f, Matrix::identity(4)) == 4);
    CHECK(mat_rank(f, Matrix(3, 3)) == 0);
    CHECK(mat_rank(f, to_matrix(oracle::dft_hadamard(2, 4, 11))) == 16);
    CHECK(mat_solve(f, Matrix::diagonal(Vector{2, 3}), Vector{1, 1}) == Vector{6, 4});
    const Matrix h4 = to_matrix(oracle::dft_hadamard(2, 2, 11));
    const Vector x{1, 2, 3, 4};
    CHECK(mat_solve(f, h4, mat_vec(f, h4, x)) == x);
}

TEST_CASE("solve round trip up to 32 x 32") {
    PrimeField f(65521);
    std::mt19937_64 rng(19);
    for (std::size_t n : {1u, 5u, 16u, 32u}) {
        const Matrix a = to_matrix(oracle::random_mat(n, n, 65521, rng));
        REQUIRE(mat_rank(f, a) == n);
        const Vector x = testsupport::random_vector(n, 65521, rng);
        CHECK(mat_solve(f, a, mat_vec(f, a, x)) == x);
    }
}

TEST_CASE("roots of unity form a cyclic group of order m") {
    for (auto [q, m] : {std::pair{13u, 3u}, {13u, 4u}, {31u, 5u}, {61u, 6u}}) {
        PrimeField f(q);
        const auto r = roots_of_unity(f, m);
        REQUIRE(r.size() == m);
        for (unsigned i = 0; i < m; ++i) {
            CHECK(r[i] == f.pow(r[1], i));
            for (unsigned j = 0; j < m; ++j) CHECK(f.mul(r[i], r[j]) == r[(i + j) % m]);
        }
        CHECK(std::set<Elem>(r.begin(), r.end()).size() == m);
    }
    CHECK(roots_of_unity(PrimeField(13), 3) == std::vector<Elem>{1, 3, 9});
}

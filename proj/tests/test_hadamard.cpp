// Copyright (c) 2026 the qhn authors
// SPDX-License-Identifier: Apache-2.0

#include <random>
#include <sstream>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "qhn/hadamard.hpp"

using qhn::HadamardMatrix;
using qhn::PrimeModulus;

namespace {

std::vector<std::uint32_t> random_block(std::mt19937& rng, std::size_t n, std::uint32_t p) {
    std::vector<std::uint32_t> b(n);
    for (auto& v : b) v = rng() % p;
    return b;
}

}  // namespace

TEST_CASE("order-8 mod-7 matrix matches the printed table", "[hadamard]") {
    const HadamardMatrix h(3, PrimeModulus(7));
    const std::uint32_t expected[8][8] = {
        {1, 1, 1, 1, 1, 1, 1, 1}, {1, 6, 1, 6, 1, 6, 1, 6}, {1, 1, 6, 6, 1, 1, 6, 6},
        {1, 6, 6, 1, 1, 6, 6, 1}, {1, 1, 1, 1, 6, 6, 6, 6}, {1, 6, 1, 6, 6, 1, 6, 1},
        {1, 1, 6, 6, 6, 6, 1, 1}, {1, 6, 6, 1, 6, 1, 1, 6}};
    REQUIRE(h.order() == 8);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) CHECK(h.at(i, j) == expected[i][j]);
    CHECK(h.inv_scale() == 1);  // 8 = 1 mod 7
}

TEST_CASE("order-8 mod-31 matrix matches the printed table", "[hadamard]") {
    const HadamardMatrix h(3, PrimeModulus(31));
    const std::uint32_t expected[8][8] = {
        {1, 1, 1, 1, 1, 1, 1, 1},         {1, 30, 1, 30, 1, 30, 1, 30},
        {1, 1, 30, 30, 1, 1, 30, 30},     {1, 30, 30, 1, 1, 30, 30, 1},
        {1, 1, 1, 1, 30, 30, 30, 30},     {1, 30, 1, 30, 30, 1, 30, 1},
        {1, 1, 30, 30, 30, 30, 1, 1},     {1, 30, 30, 1, 30, 1, 1, 30}};
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) CHECK(h.at(i, j) == expected[i][j]);
}

TEST_CASE("order-4 mod-7 matrix and base case", "[hadamard]") {
    const HadamardMatrix h(2, PrimeModulus(7));
    const std::uint32_t expected[4][4] = {{1, 1, 1, 1}, {1, 6, 1, 6}, {1, 1, 6, 6}, {1, 6, 6, 1}};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(h.at(i, j) == expected[i][j]);

    const HadamardMatrix h0(0, PrimeModulus(7));
    CHECK(h0.order() == 1);
    CHECK(h0.at(0, 0) == 1);
}

TEST_CASE("H * H^T = n*I mod p, and H is symmetric", "[hadamard]") {
    for (std::uint32_t pv : {3u, 5u, 7u, 31u, 257u}) {
        const PrimeModulus p(pv);
        for (unsigned m = 0; m <= 6; ++m) {
            const HadamardMatrix h(m, p);
            const std::size_t n = h.order();
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i; j < n; ++j) {
                    CHECK(h.at(i, j) == h.at(j, i));
                    std::uint64_t dot = 0;
                    for (std::size_t k = 0; k < n; ++k)
                        dot += static_cast<std::uint64_t>(h.at(i, k)) * h.at(j, k);
                    CHECK(dot % pv == (i == j ? n % pv : 0u));
                }
            }
        }
    }
}

TEST_CASE("symmetry holds through m = 10", "[hadamard]") {
    for (std::uint32_t pv : {7u, 257u}) {
        for (unsigned m = 7; m <= 10; ++m) {
            const HadamardMatrix h(m, PrimeModulus(pv));
            bool symmetric = true;
            for (std::size_t i = 0; i < h.order() && symmetric; ++i)
                for (std::size_t j = i + 1; j < h.order(); ++j)
                    if (h.at(i, j) != h.at(j, i)) {
                        symmetric = false;
                        break;
                    }
            CHECK(symmetric);
        }
    }
}

TEST_CASE("normalized form: first row and column all ones, entries in {1, p-1}", "[hadamard]") {
    const HadamardMatrix h(5, PrimeModulus(31));
    for (std::size_t i = 0; i < h.order(); ++i) {
        CHECK(h.at(0, i) == 1);
        CHECK(h.at(i, 0) == 1);
        for (std::size_t j = 0; j < h.order(); ++j) CHECK((h.at(i, j) == 1 || h.at(i, j) == 30));
    }
}

TEST_CASE("naive transform on simple blocks", "[hadamard]") {
    const HadamardMatrix h(3, PrimeModulus(7));
    const std::vector<std::uint32_t> zeros(8, 0);
    CHECK(h.forward_naive(zeros) == zeros);

    std::vector<std::uint32_t> e0(8, 0);
    e0[0] = 1;
    CHECK(h.forward_naive(e0) == std::vector<std::uint32_t>(8, 1));  // column 0

    // hand multiply against the order-4 table: [10, 40, 45, 35] mod 7
    const HadamardMatrix h4(2, PrimeModulus(7));
    CHECK(h4.forward_naive(std::vector<std::uint32_t>{1, 2, 3, 4}) ==
          std::vector<std::uint32_t>{3, 5, 3, 0});

    CHECK_THROWS_AS(h.forward_naive(std::vector<std::uint32_t>(4, 0)), qhn::BlockSizeMismatch);
}

TEST_CASE("fast kernel is a single butterfly at order 2", "[hadamard]") {
    const PrimeModulus p(7);
    const HadamardMatrix h(1, p);
    for (std::uint32_t a = 0; a < 7; ++a)
        for (std::uint32_t b = 0; b < 7; ++b) {
            const std::vector<std::uint32_t> y = h.forward_fast(std::vector<std::uint32_t>{a, b});
            CHECK(y[0] == (a + b) % 7);
            CHECK(y[1] == (a + 6 * b) % 7);
        }
}

TEST_CASE("fast kernel agrees with the naive oracle", "[hadamard]") {
    std::mt19937 rng(42);
    for (std::uint32_t pv : {7u, 31u, 257u}) {
        const PrimeModulus p(pv);
        for (unsigned m = 1; m <= 10; ++m) {
            const HadamardMatrix h(m, p);
            for (int trial = 0; trial < 10; ++trial) {
                const auto block = random_block(rng, h.order(), pv);
                CHECK(h.forward_fast(block) == h.forward_naive(block));
            }
        }
    }
}

TEST_CASE("inverse undoes the forward transform", "[hadamard]") {
    const PrimeModulus p7(7);

    // order 8 mod 7: the inverse scale is 1, so inverse equals forward
    const HadamardMatrix h8(3, p7);
    std::mt19937 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const auto block = random_block(rng, 8, 7);
        CHECK(h8.inverse(block) == h8.forward_fast(block));
        CHECK(h8.inverse(h8.forward_fast(block)) == block);
    }

    // exhaustive round trip over all 7^4 order-4 blocks
    const HadamardMatrix h4(2, p7);
    std::vector<std::uint32_t> block(4);
    for (std::uint32_t code = 0; code < 7 * 7 * 7 * 7; ++code) {
        std::uint32_t c = code;
        for (auto& v : block) {
            v = c % 7;
            c /= 7;
        }
        CHECK(h4.inverse(h4.forward_fast(block)) == block);
        CHECK(h4.inverse(h4.forward_naive(block)) == block);
    }

    // order 1 is the identity
    const HadamardMatrix h1(0, p7);
    CHECK(h1.inverse(std::vector<std::uint32_t>{5}) == std::vector<std::uint32_t>{5});
}

TEST_CASE("p = 2 degenerates for any order above 1", "[hadamard]") {
    CHECK_NOTHROW(HadamardMatrix(0, PrimeModulus(2)));
    CHECK_THROWS_AS(HadamardMatrix(1, PrimeModulus(2)), qhn::DegenerateOrder);
    CHECK_THROWS_AS(HadamardMatrix(3, PrimeModulus(2)), qhn::DegenerateOrder);
}

TEST_CASE("printable as a whitespace grid", "[hadamard]") {
    std::ostringstream out;
    HadamardMatrix(2, PrimeModulus(7)).print(out);
    CHECK(out.str() == "1 1 1 1\n1 6 1 6\n1 1 6 6\n1 6 6 1\n");
}

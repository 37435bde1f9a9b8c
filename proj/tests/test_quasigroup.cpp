// Copyright (c) 2026 the qhn authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <random>
#include <sstream>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "qhn/quasigroup.hpp"

using qhn::qg_decrypt;
using qhn::qg_encrypt;
using qhn::QuasigroupKey;
using qhn::QuasigroupTable;

namespace {

// Independent copy of the order-7 table for oracle computations.
const std::vector<std::vector<std::uint32_t>> kPaper7 = {
    {2, 1, 0, 5, 4, 6, 3}, {1, 4, 3, 2, 6, 0, 5}, {0, 5, 1, 6, 3, 4, 2}, {4, 3, 6, 1, 2, 5, 0},
    {6, 2, 5, 0, 1, 3, 4}, {3, 0, 2, 4, 5, 1, 6}, {5, 6, 4, 3, 0, 2, 1}};

}  // namespace

TEST_CASE("table lookup matches the worked products", "[quasigroup]") {
    const QuasigroupTable& t = QuasigroupTable::paper7();
    CHECK(t.order() == 7);
    CHECK(t.mul(6, 3) == 3);  // a=6, x=3 gives b=3
    CHECK(t.mul(3, 4) == 2);  // e_1 = 3*4 = 2
    CHECK(t.mul(2, 5) == 4);  // direct row-2 lookup
    CHECK_THROWS_AS(t.mul(7, 0), qhn::OutOfAlphabet);
    CHECK_THROWS_AS(t.mul(0, 7), qhn::OutOfAlphabet);
}

TEST_CASE("left division solves a*x = b", "[quasigroup]") {
    const QuasigroupTable& t = QuasigroupTable::paper7();
    CHECK(t.left_divide(6, 3) == 3);
    CHECK(t.left_divide(3, 2) == 4);
    for (std::uint32_t a = 0; a < 7; ++a)
        for (std::uint32_t x = 0; x < 7; ++x) CHECK(t.left_divide(a, t.mul(a, x)) == x);
    CHECK_THROWS_AS(t.left_divide(9, 0), qhn::OutOfAlphabet);
}

TEST_CASE("chained encryption reproduces the recomputed chain", "[quasigroup]") {
    const QuasigroupKey key(QuasigroupTable::paper7(), 3);
    const std::vector<std::uint32_t> input = {4, 5, 0, 1, 3, 3};

    // oracle: iterate the raw table directly
    std::vector<std::uint32_t> expected;
    std::uint32_t prev = 3;
    for (std::uint32_t a : input) {
        prev = kPaper7[prev][a];
        expected.push_back(prev);
    }
    CHECK(expected == std::vector<std::uint32_t>{2, 4, 6, 6, 3, 1});
    CHECK(qg_encrypt(key, input) == expected);
}

TEST_CASE("encryption edge cases", "[quasigroup]") {
    CHECK(qg_encrypt(QuasigroupKey(QuasigroupTable::paper7(), 0), {}).empty());
    // single step with seed 6: 6*3 = 3
    CHECK(qg_encrypt(QuasigroupKey(QuasigroupTable::paper7(), 6), std::vector<std::uint32_t>{3}) ==
          std::vector<std::uint32_t>{3});
    CHECK_THROWS_AS(qg_encrypt(QuasigroupKey(QuasigroupTable::paper7(), 0),
                               std::vector<std::uint32_t>{7}),
                    qhn::OutOfAlphabet);
    CHECK_THROWS_AS(QuasigroupKey(QuasigroupTable::paper7(), 7), qhn::OutOfAlphabet);
}

TEST_CASE("decryption inverts the worked chain", "[quasigroup]") {
    const QuasigroupKey key(QuasigroupTable::paper7(), 3);
    CHECK(qg_decrypt(key, std::vector<std::uint32_t>{2, 4, 6, 6, 3, 1}) ==
          std::vector<std::uint32_t>{4, 5, 0, 1, 3, 3});
    CHECK(qg_decrypt(key, {}).empty());
}

TEST_CASE("round trip over random sequences and seeds", "[quasigroup]") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::uint32_t> sym(0, 6);
    std::uniform_int_distribution<std::size_t> len(0, 64);
    for (int trial = 0; trial < 1000; ++trial) {
        const QuasigroupKey key(QuasigroupTable::paper7(), sym(rng));
        std::vector<std::uint32_t> s(len(rng));
        for (auto& v : s) v = sym(rng);
        CHECK(qg_decrypt(key, qg_encrypt(key, s)) == s);
    }
}

TEST_CASE("changing one input symbol changes every output from there on", "[quasigroup]") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<std::uint32_t> sym(0, 6);
    for (int trial = 0; trial < 200; ++trial) {
        const QuasigroupKey key(QuasigroupTable::paper7(), sym(rng));
        std::vector<std::uint32_t> s(32);
        for (auto& v : s) v = sym(rng);
        const std::size_t i = rng() % s.size();
        std::vector<std::uint32_t> mutated = s;
        mutated[i] = (mutated[i] + 1 + rng() % 6) % 7;

        const auto e1 = qg_encrypt(key, s);
        const auto e2 = qg_encrypt(key, mutated);
        for (std::size_t j = 0; j < i; ++j) CHECK(e1[j] == e2[j]);
        // once the chains diverge they never re-converge: each column is a
        // permutation, so distinct previous outputs map to distinct outputs
        for (std::size_t j = i; j < s.size(); ++j) CHECK(e1[j] != e2[j]);
    }
}

TEST_CASE("validation identifies the first violated line", "[quasigroup]") {
    CHECK_NOTHROW(QuasigroupTable::validate(kPaper7));
    CHECK_NOTHROW(QuasigroupTable::cyclic(5));

    CHECK_THROWS_MATCHES(QuasigroupTable::validate({{0, 1}, {0, 1}}), qhn::NotLatinSquare,
                         Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("column 0")));
    CHECK_THROWS_MATCHES(QuasigroupTable::validate({{0, 0}, {1, 1}}), qhn::NotLatinSquare,
                         Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("row 0")));
    CHECK_THROWS_AS(QuasigroupTable::validate({{0, 1}, {1, 2}}), qhn::NotLatinSquare);  // out of range
    CHECK_THROWS_AS(QuasigroupTable::validate({{0, 1}}), qhn::NotLatinSquare);          // not square
    CHECK_THROWS_AS(QuasigroupTable::validate({}), qhn::NotLatinSquare);
}

TEST_CASE("validation accepts exactly the Latin squares of order 4", "[quasigroup]") {
    // enumerate all 24^4 row-permutation tables; exactly 576 have permutation
    // columns as well
    std::vector<std::vector<std::uint32_t>> perms;
    std::vector<std::uint32_t> p = {0, 1, 2, 3};
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    REQUIRE(perms.size() == 24);

    auto columns_ok = [](const std::vector<std::vector<std::uint32_t>>& rows) {
        for (int c = 0; c < 4; ++c) {
            bool seen[4] = {};
            for (int r = 0; r < 4; ++r) {
                if (seen[rows[r][c]]) return false;
                seen[rows[r][c]] = true;
            }
        }
        return true;
    };

    std::size_t accepted = 0;
    for (const auto& r0 : perms)
        for (const auto& r1 : perms)
            for (const auto& r2 : perms)
                for (const auto& r3 : perms) {
                    const std::vector<std::vector<std::uint32_t>> rows = {r0, r1, r2, r3};
                    bool ok = true;
                    try {
                        QuasigroupTable::validate(rows);
                    } catch (const qhn::NotLatinSquare&) {
                        ok = false;
                    }
                    REQUIRE(ok == columns_ok(rows));
                    accepted += ok;
                }
    CHECK(accepted == 576);
}

TEST_CASE("table file round trip", "[quasigroup]") {
    std::stringstream buf;
    QuasigroupTable::paper7().write(buf);
    const QuasigroupTable reread = QuasigroupTable::read(buf);
    CHECK(reread == QuasigroupTable::paper7());

    std::stringstream bad("3\n0 1 2\n1 2");
    CHECK_THROWS_AS(QuasigroupTable::read(bad), qhn::FormatError);
    std::stringstream empty("");
    CHECK_THROWS_AS(QuasigroupTable::read(empty), qhn::FormatError);
}

TEST_CASE("cyclic tables of any order validate", "[quasigroup]") {
    for (std::uint32_t q : {1u, 2u, 7u, 31u}) {
        const QuasigroupTable t = QuasigroupTable::cyclic(q);
        CHECK(t.order() == q);
        for (std::uint32_t a = 0; a < q; ++a)
            for (std::uint32_t x = 0; x < q; ++x) CHECK(t.mul(a, x) == (a + x) % q);
    }
}

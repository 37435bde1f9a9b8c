// Copyright (c) 2026 the qhn authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "qhn/errors.hpp"

namespace qhn {

/// A Latin square of order q over the symbols {0..q-1}: the Cayley table of a
/// quasigroup. Row a, column x holds a*x. Every row and every column is a
/// permutation, so a*x = b is uniquely solvable for x; the solution table for
/// that "left division" is precomputed at validation time.
class QuasigroupTable {
public:
    /// Validates that `rows` is a Latin square and builds the division table.
    /// Reports the first violated row or column.
    static QuasigroupTable validate(const std::vector<std::vector<std::uint32_t>>& rows) {
        const std::size_t q = rows.size();
        if (q == 0) throw NotLatinSquare("empty table");
        QuasigroupTable t;
        t.q_ = static_cast<std::uint32_t>(q);
        t.cells_.resize(q * q);
        for (std::size_t r = 0; r < q; ++r) {
            if (rows[r].size() != q)
                throw NotLatinSquare("row " + std::to_string(r) + " has " +
                                     std::to_string(rows[r].size()) + " entries, expected " +
                                     std::to_string(q));
            for (std::size_t c = 0; c < q; ++c) t.cells_[r * q + c] = rows[r][c];
        }

        std::vector<bool> seen(q);
        for (std::size_t r = 0; r < q; ++r) {
            seen.assign(q, false);
            for (std::size_t c = 0; c < q; ++c) {
                std::uint32_t v = t.cells_[r * q + c];
                if (v >= q || seen[v])
                    throw NotLatinSquare("row " + std::to_string(r) + " is not a permutation");
                seen[v] = true;
            }
        }
        for (std::size_t c = 0; c < q; ++c) {
            seen.assign(q, false);
            for (std::size_t r = 0; r < q; ++r) {
                std::uint32_t v = t.cells_[r * q + c];
                if (seen[v])
                    throw NotLatinSquare("column " + std::to_string(c) + " is not a permutation");
                seen[v] = true;
            }
        }

        // left_div[a][b] = the unique x with a*x = b
        t.left_div_.resize(q * q);
        for (std::size_t a = 0; a < q; ++a)
            for (std::size_t x = 0; x < q; ++x) t.left_div_[a * q + t.cells_[a * q + x]] = static_cast<std::uint32_t>(x);
        return t;
    }

    /// The order-7 built-in table ("paper7").
    static const QuasigroupTable& paper7() {
        static const QuasigroupTable t = validate({
            {2, 1, 0, 5, 4, 6, 3},
            {1, 4, 3, 2, 6, 0, 5},
            {0, 5, 1, 6, 3, 4, 2},
            {4, 3, 6, 1, 2, 5, 0},
            {6, 2, 5, 0, 1, 3, 4},
            {3, 0, 2, 4, 5, 1, 6},
            {5, 6, 4, 3, 0, 2, 1},
        });
        return t;
    }

    /// t[a][x] = (a + x) mod q. Any cyclic group is a quasigroup.
    static QuasigroupTable cyclic(std::uint32_t q) {
        std::vector<std::vector<std::uint32_t>> rows(q, std::vector<std::uint32_t>(q));
        for (std::uint32_t a = 0; a < q; ++a)
            for (std::uint32_t x = 0; x < q; ++x) rows[a][x] = (a + x) % q;
        return validate(rows);
    }

    /// File format: first line q, then q lines of q whitespace-separated
    /// decimal integers.
    static QuasigroupTable read(std::istream& in) {
        std::size_t q = 0;
        if (!(in >> q) || q == 0) throw FormatError("bad quasigroup table header");
        std::vector<std::vector<std::uint32_t>> rows(q, std::vector<std::uint32_t>(q));
        for (std::size_t r = 0; r < q; ++r)
            for (std::size_t c = 0; c < q; ++c)
                if (!(in >> rows[r][c]))
                    throw FormatError("quasigroup table truncated at row " + std::to_string(r));
        return validate(rows);
    }

    void write(std::ostream& out) const {
        out << q_ << '\n';
        for (std::uint32_t r = 0; r < q_; ++r) {
            for (std::uint32_t c = 0; c < q_; ++c) out << cells_[r * q_ + c] << (c + 1 == q_ ? '\n' : ' ');
        }
    }

    std::uint32_t order() const { return q_; }

    /// a*x: row a, column x.
    std::uint32_t mul(std::uint32_t a, std::uint32_t x) const {
        check_symbol(a);
        check_symbol(x);
        return cells_[a * q_ + x];
    }

    /// The unique x with a*x = b.
    std::uint32_t left_divide(std::uint32_t a, std::uint32_t b) const {
        check_symbol(a);
        check_symbol(b);
        return left_div_[a * q_ + b];
    }

    friend bool operator==(const QuasigroupTable& a, const QuasigroupTable& b) {
        return a.q_ == b.q_ && a.cells_ == b.cells_;
    }

private:
    QuasigroupTable() = default;

    void check_symbol(std::uint32_t s) const {
        if (s >= q_)
            throw OutOfAlphabet("symbol " + std::to_string(s) + " not in [0, " + std::to_string(q_) + ")");
    }

    std::uint32_t q_ = 0;
    std::vector<std::uint32_t> cells_;     // row-major q*q
    std::vector<std::uint32_t> left_div_;  // row-major q*q
};

/// Table plus the seed element that starts the chain.
struct QuasigroupKey {
    QuasigroupKey(QuasigroupTable t, std::uint32_t s) : table(std::move(t)), seed(s) {
        if (seed >= table.order())
            throw OutOfAlphabet("seed " + std::to_string(seed) + " not in [0, " +
                                std::to_string(table.order()) + ")");
    }

    QuasigroupTable table;
    std::uint32_t seed;
};

/// e_1 = seed * a_1, e_i = e_{i-1} * a_i.
inline std::vector<std::uint32_t> qg_encrypt(const QuasigroupKey& key,
                                             std::span<const std::uint32_t> input) {
    std::vector<std::uint32_t> out(input.size());
    std::uint32_t prev = key.seed;
    for (std::size_t i = 0; i < input.size(); ++i) {
        prev = key.table.mul(prev, input[i]);
        out[i] = prev;
    }
    return out;
}

/// a_i = e_{i-1} \ e_i; exact inverse of qg_encrypt.
inline std::vector<std::uint32_t> qg_decrypt(const QuasigroupKey& key,
                                             std::span<const std::uint32_t> cipher) {
    std::vector<std::uint32_t> out(cipher.size());
    std::uint32_t prev = key.seed;
    for (std::size_t i = 0; i < cipher.size(); ++i) {
        out[i] = key.table.left_divide(prev, cipher[i]);
        prev = cipher[i];
    }
    return out;
}

}  // namespace qhn

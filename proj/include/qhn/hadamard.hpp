// Copyright (c) 2026 the qhn authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "qhn/errors.hpp"
#include "qhn/modmath.hpp"

namespace qhn {

/// Sylvester-type Hadamard matrix of order n = 2^m over Z_p, with -1 written
/// as p-1. Entries are all 1 or p-1, the first row and column are all 1, and
/// H*H^T = n*I (mod p). H is symmetric, so the inverse transform is just the
/// forward transform scaled by n^-1 mod p.
class HadamardMatrix {
public:
    HadamardMatrix(unsigned depth, PrimeModulus p) : m_(depth), n_(std::size_t{1} << depth), p_(p) {
        if (p_.value() == 2 && m_ > 0)
            throw DegenerateOrder("order " + std::to_string(n_) + " is divisible by modulus 2");
        const std::uint32_t neg1 = p_.value() - 1;

        // H_0 = [1]; each doubling step maps H to [[H,H],[H,-H]].
        entries_.assign(n_ * n_, 0);
        entries_[0] = 1;
        for (std::size_t half = 1; half < n_; half <<= 1) {
            for (std::size_t i = 0; i < half; ++i) {
                for (std::size_t j = 0; j < half; ++j) {
                    std::uint32_t v = entries_[i * n_ + j];
                    entries_[i * n_ + (j + half)] = v;
                    entries_[(i + half) * n_ + j] = v;
                    entries_[(i + half) * n_ + (j + half)] = v == 1 ? neg1 : 1;
                }
            }
        }
        inv_scale_ = p_.inverse(p_.reduce(static_cast<std::int64_t>(n_ % p_.value())));
    }

    unsigned depth() const { return m_; }
    std::size_t order() const { return n_; }
    PrimeModulus modulus() const { return p_; }
    std::uint32_t inv_scale() const { return inv_scale_; }

    std::uint32_t at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

    /// y = H*x mod p by direct matrix-vector product. Test oracle for the
    /// fast kernel; O(n^2).
    std::vector<std::uint32_t> forward_naive(std::span<const std::uint32_t> block) const {
        check_block(block);
        std::vector<std::uint32_t> y(n_);
        const std::uint32_t p = p_.value();
        for (std::size_t i = 0; i < n_; ++i) {
            std::uint64_t acc = 0;
            const std::uint32_t* row = &entries_[i * n_];
            for (std::size_t j = 0; j < n_; ++j) acc = (acc + static_cast<std::uint64_t>(row[j]) * block[j]) % p;
            y[i] = static_cast<std::uint32_t>(acc);
        }
        return y;
    }

    /// Same map as forward_naive via log2(n) in-place butterfly stages, each
    /// computing (u+v, u-v) mod p. O(n log n).
    std::vector<std::uint32_t> forward_fast(std::span<const std::uint32_t> block) const {
        check_block(block);
        std::vector<std::uint32_t> y(block.begin(), block.end());
        fast_inplace(y);
        return y;
    }

    /// x = n^-1 * H * y mod p (H is its own transpose).
    std::vector<std::uint32_t> inverse(std::span<const std::uint32_t> block) const {
        check_block(block);
        std::vector<std::uint32_t> x(block.begin(), block.end());
        fast_inplace(x);
        for (auto& v : x) v = p_.mul(v, inv_scale_);
        return x;
    }

    std::vector<std::uint32_t> forward(std::span<const std::uint32_t> block) const {
        return forward_fast(block);
    }

    /// Whitespace-separated decimal grid, one row per line.
    void print(std::ostream& out) const {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) out << entries_[i * n_ + j] << (j + 1 == n_ ? '\n' : ' ');
    }

private:
    void check_block(std::span<const std::uint32_t> block) const {
        if (block.size() != n_)
            throw BlockSizeMismatch("block size " + std::to_string(block.size()) + " != order " +
                                    std::to_string(n_));
    }

    // The butterfly stages commute (H is a tensor power of the order-2
    // matrix), so any stride order yields the same transform.
    void fast_inplace(std::vector<std::uint32_t>& y) const {
        for (std::size_t h = 1; h < n_; h <<= 1) {
            for (std::size_t i = 0; i < n_; i += 2 * h) {
                for (std::size_t j = i; j < i + h; ++j) {
                    std::uint32_t u = y[j];
                    std::uint32_t v = y[j + h];
                    y[j] = p_.add(u, v);
                    y[j + h] = p_.sub(u, v);
                }
            }
        }
    }

    unsigned m_;
    std::size_t n_;
    PrimeModulus p_;
    std::vector<std::uint32_t> entries_;  // row-major n*n
    std::uint32_t inv_scale_;
};

}  // namespace qhn

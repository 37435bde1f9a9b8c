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

namespace detail {

inline std::vector<std::uint32_t> distinct_prime_factors(std::uint64_t n) {
    std::vector<std::uint32_t> factors;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            factors.push_back(static_cast<std::uint32_t>(d));
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) factors.push_back(static_cast<std::uint32_t>(n));
    return factors;
}

inline constexpr bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace detail

/// Smallest g in [2, p) of multiplicative order exactly n, i.e. the canonical
/// primitive n-th root of unity mod p. n = 1 returns 1. A root exists iff
/// n | p-1.
inline std::uint32_t find_primitive_nth_root(std::size_t n, PrimeModulus p) {
    if (n == 0) throw NoSuchRoot("order 0 has no root");
    if (n == 1) return 1;
    if ((p.value() - 1) % n != 0)
        throw NoSuchRoot("no primitive root of order " + std::to_string(n) + " mod " +
                         std::to_string(p.value()) + ": " + std::to_string(n) + " does not divide p-1");
    const auto factors = detail::distinct_prime_factors(n);
    for (std::uint32_t g = 2; g < p.value(); ++g) {
        if (p.pow(g, n) != 1) continue;
        bool primitive = true;
        for (std::uint32_t q : factors) {
            if (p.pow(g, n / q) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) return g;
    }
    throw NoSuchRoot("no primitive root of order " + std::to_string(n) + " mod " +
                     std::to_string(p.value()));
}

/// Fourier matrix over Z_p: entries[i][j] = w^(i*j) where w is a primitive
/// n-th root of unity. Exponents reduce mod n since w^n = 1. Symmetric, with
/// all-ones first row and column; inverse transform uses w^-1 and the n^-1
/// scale.
class NttMatrix {
public:
    NttMatrix(std::size_t n, PrimeModulus p)
        : n_(n), p_(p), w_(find_primitive_nth_root(n, p)) {
        w_inv_ = p_.inverse(w_);
        inv_scale_ = p_.inverse(static_cast<std::uint32_t>(n_ % p_.value()));

        std::vector<std::uint32_t> pow(n_);
        pow[0] = 1;
        for (std::size_t k = 1; k < n_; ++k) pow[k] = p_.mul(pow[k - 1], w_);
        entries_.resize(n_ * n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) entries_[i * n_ + j] = pow[i * j % n_];
    }

    std::size_t order() const { return n_; }
    PrimeModulus modulus() const { return p_; }
    std::uint32_t root() const { return w_; }
    std::uint32_t root_inverse() const { return w_inv_; }
    std::uint32_t inv_scale() const { return inv_scale_; }

    std::uint32_t at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

    /// y[i] = sum_j w^(i*j) * x[j] mod p. O(n^2); oracle for the fast kernel.
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

    /// Radix-2 decimation-in-time butterflies; only defined when n is a power
    /// of two. Same map as forward_naive.
    std::vector<std::uint32_t> forward_fast(std::span<const std::uint32_t> block) const {
        check_block(block);
        if (!detail::is_power_of_two(n_))
            throw UnsupportedFastOrder("fast kernel requires a power-of-two order, got " +
                                       std::to_string(n_));
        std::vector<std::uint32_t> y(block.begin(), block.end());
        fast_inplace(y, w_);
        return y;
    }

    /// x[j] = n^-1 * sum_i w^(-i*j) * y[i] mod p; exact inverse of the
    /// forward transform. Uses butterflies with w^-1 when n is a power of
    /// two, the direct sum otherwise.
    std::vector<std::uint32_t> inverse(std::span<const std::uint32_t> block) const {
        check_block(block);
        std::vector<std::uint32_t> x;
        if (detail::is_power_of_two(n_)) {
            x.assign(block.begin(), block.end());
            fast_inplace(x, w_inv_);
        } else {
            x.resize(n_);
            std::vector<std::uint32_t> pow(n_);
            pow[0] = 1;
            for (std::size_t k = 1; k < n_; ++k) pow[k] = p_.mul(pow[k - 1], w_inv_);
            const std::uint32_t p = p_.value();
            for (std::size_t j = 0; j < n_; ++j) {
                std::uint64_t acc = 0;
                for (std::size_t i = 0; i < n_; ++i)
                    acc = (acc + static_cast<std::uint64_t>(pow[i * j % n_]) * block[i]) % p;
                x[j] = static_cast<std::uint32_t>(acc);
            }
        }
        for (auto& v : x) v = p_.mul(v, inv_scale_);
        return x;
    }

    /// Fast kernel when the order permits, naive otherwise.
    std::vector<std::uint32_t> forward(std::span<const std::uint32_t> block) const {
        return detail::is_power_of_two(n_) ? forward_fast(block) : forward_naive(block);
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

    void fast_inplace(std::vector<std::uint32_t>& a, std::uint32_t root) const {
        const std::size_t n = n_;
        // bit-reversal permutation
        for (std::size_t i = 1, j = 0; i < n; ++i) {
            std::size_t bit = n >> 1;
            for (; j & bit; bit >>= 1) j ^= bit;
            j ^= bit;
            if (i < j) std::swap(a[i], a[j]);
        }
        for (std::size_t len = 2; len <= n; len <<= 1) {
            const std::uint32_t wlen = p_.pow(root, n / len);
            for (std::size_t i = 0; i < n; i += len) {
                std::uint32_t tw = 1;
                for (std::size_t j = 0; j < len / 2; ++j) {
                    std::uint32_t u = a[i + j];
                    std::uint32_t v = p_.mul(a[i + j + len / 2], tw);
                    a[i + j] = p_.add(u, v);
                    a[i + j + len / 2] = p_.sub(u, v);
                    tw = p_.mul(tw, wlen);
                }
            }
        }
    }

    std::size_t n_;
    PrimeModulus p_;
    std::uint32_t w_;
    std::uint32_t w_inv_;
    std::uint32_t inv_scale_;
    std::vector<std::uint32_t> entries_;  // row-major n*n
};

}  // namespace qhn

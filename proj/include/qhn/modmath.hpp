// Copyright (c) 2026 the qhn authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

#include "qhn/errors.hpp"

namespace qhn {

/// Deterministic primality test for the full 64-bit range.
///
/// Miller-Rabin with the witness set {2,3,5,7,11,13,17,19,23,29,31,37},
/// which is known to be exact for all n < 3.3e24.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }

    auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) -> std::uint64_t {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
    };
    auto powmod = [&](std::uint64_t b, std::uint64_t e, std::uint64_t m) -> std::uint64_t {
        std::uint64_t r = 1;
        b %= m;
        while (e > 0) {
            if (e & 1) r = mulmod(r, b, m);
            b = mulmod(b, b, m);
            e >>= 1;
        }
        return r;
    };

    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

/// A validated odd-or-even prime p < 2^31, plus the arithmetic on canonical
/// residues in [0, p). Keeping p below 2^31 lets every product fit a uint64.
class PrimeModulus {
public:
    explicit PrimeModulus(std::uint32_t p) : p_(p) {
        if (p >= (1u << 31))
            throw NotPrime("modulus " + std::to_string(p) + " exceeds 2^31-1");
        if (!is_prime(p))
            throw NotPrime("modulus " + std::to_string(p) + " is not prime");
    }

    std::uint32_t value() const { return p_; }

    /// Canonical representative of z mod p, valid for any signed 64-bit z.
    std::uint32_t reduce(std::int64_t z) const {
        std::int64_t r = z % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        return static_cast<std::uint32_t>(r);
    }

    // The raw-residue ops below assume canonical inputs in [0, p).
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t s = a + b;  // < 2^32, no overflow since a,b < 2^31
        return s >= p_ ? s - p_ : s;
    }

    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        return a >= b ? a - b : a + p_ - b;
    }

    std::uint32_t negate(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
    }

    /// base^exp mod p by square-and-multiply; exp = 0 gives 1.
    std::uint32_t pow(std::uint32_t base, std::uint64_t exp) const {
        std::uint64_t result = 1;
        std::uint64_t b = base % p_;
        while (exp > 0) {
            if (exp & 1) result = result * b % p_;
            b = b * b % p_;
            exp >>= 1;
        }
        return static_cast<std::uint32_t>(result);
    }

    /// Multiplicative inverse via Fermat: a^(p-2) mod p.
    std::uint32_t inverse(std::uint32_t a) const {
        if (a % p_ == 0)
            throw ZeroInverse("0 has no inverse mod " + std::to_string(p_));
        return pow(a % p_, p_ - 2);
    }

    friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

private:
    std::uint32_t p_;
};

/// A single canonical residue carrying its modulus. Scalar convenience type;
/// bulk kernels work on raw uint32_t vectors under one PrimeModulus.
class Residue {
public:
    Residue(std::int64_t value, PrimeModulus m) : mod_(m), value_(m.reduce(value)) {}

    std::uint32_t value() const { return value_; }
    PrimeModulus modulus() const { return mod_; }

    friend Residue operator+(Residue a, Residue b) {
        a.check_same(b);
        return Residue(a.mod_, a.mod_.add(a.value_, b.value_));
    }
    friend Residue operator-(Residue a, Residue b) {
        a.check_same(b);
        return Residue(a.mod_, a.mod_.sub(a.value_, b.value_));
    }
    friend Residue operator*(Residue a, Residue b) {
        a.check_same(b);
        return Residue(a.mod_, a.mod_.mul(a.value_, b.value_));
    }
    friend bool operator==(const Residue& a, const Residue& b) {
        return a.mod_ == b.mod_ && a.value_ == b.value_;
    }

private:
    Residue(PrimeModulus m, std::uint32_t canonical) : mod_(m), value_(canonical) {}

    void check_same(const Residue& other) const {
        if (!(mod_ == other.mod_))
            throw ModulusMismatch("mixed moduli " + std::to_string(mod_.value()) + " and " +
                                  std::to_string(other.mod_.value()));
    }

    PrimeModulus mod_;
    std::uint32_t value_;
};

inline Residue mod_pow(Residue base, std::uint64_t exp) {
    return Residue(base.modulus().pow(base.value(), exp), base.modulus());
}

inline Residue mod_inverse(Residue a) {
    return Residue(a.modulus().inverse(a.value()), a.modulus());
}

}  // namespace qhn

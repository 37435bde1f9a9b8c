// Copyright (c) 2026 the qhn authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "qhn/errors.hpp"
#include "qhn/modmath.hpp"
#include "qhn/randomness.hpp"

namespace qhn {

/// Park-Miller minimal standard generator: s_{k+1} = 16807 * s_k mod 2^31-1.
/// State stays in [1, 2^31-2] forever, so it never needs reseeding.
class LehmerLcg {
public:
    explicit LehmerLcg(std::uint32_t seed) : state_(seed) {
        if (seed < 1 || seed >= kModulus)
            throw BadSeed("seed " + std::to_string(seed) + " not in [1, 2^31-2]");
    }

    std::uint32_t next() {
        state_ = static_cast<std::uint32_t>(static_cast<std::uint64_t>(state_) * kMultiplier % kModulus);
        return state_;
    }

    static constexpr std::uint32_t kMultiplier = 16807;
    static constexpr std::uint32_t kModulus = 2147483647;  // 2^31 - 1

private:
    std::uint32_t state_;
};

/// Symbol k is the (k+1)-th LCG state reduced mod p.
inline std::vector<std::uint32_t> gen_lcg(std::uint32_t seed, std::size_t length, PrimeModulus p) {
    LehmerLcg rng(seed);
    std::vector<std::uint32_t> out(length);
    for (auto& s : out) s = rng.next() % p.value();
    return out;
}

/// Binary d-sequence of the odd prime q: bit a_i = (2^i mod q) mod 2 for
/// i = 1..length, i.e. the binary expansion of 1/q. Period divides the
/// multiplicative order of 2 mod q.
inline std::vector<std::uint8_t> gen_dsequence_bits(std::uint64_t q, std::size_t length) {
    if (q == 2 || !is_prime(q)) throw BadPrime("d-sequence modulus must be an odd prime, got " + std::to_string(q));
    std::vector<std::uint8_t> bits(length);
    std::uint64_t pow2 = 1;
    for (auto& b : bits) {
        pow2 = pow2 * 2 % q;
        b = static_cast<std::uint8_t>(pow2 & 1);
    }
    return bits;
}

enum class Pattern { zeros, ones, zeros_last_one };

inline std::vector<std::uint32_t> gen_pattern(Pattern kind, std::size_t length) {
    std::vector<std::uint32_t> out(length, kind == Pattern::ones ? 1u : 0u);
    if (kind == Pattern::zeros_last_one && length > 0) out.back() = 1;
    return out;
}

struct PackedSymbols {
    std::vector<std::uint32_t> symbols;
    std::size_t reduced_count = 0;  // packed values >= p that were reduced mod p
};

/// Packs each group of bits_per_symbol(p) consecutive bits (MSB first) into
/// one symbol; the inverse of to_bits for in-alphabet values. Groups that
/// decode to a value >= p are reduced mod p and counted. A trailing partial
/// group is dropped.
inline PackedSymbols pack_bits(std::span<const std::uint8_t> bits, PrimeModulus p) {
    const unsigned b = bits_per_symbol(p);
    PackedSymbols out;
    out.symbols.reserve(bits.size() / b);
    for (std::size_t off = 0; off + b <= bits.size(); off += b) {
        std::uint32_t v = 0;
        for (unsigned k = 0; k < b; ++k) v = (v << 1) | bits[off + k];
        if (v >= p.value()) {
            v %= p.value();
            ++out.reduced_count;
        }
        out.symbols.push_back(v);
    }
    return out;
}

/// One of the input classes the pipeline experiments feed on.
struct SourceSpec {
    enum class Kind { lcg, dseq, zeros, ones, zeros_last_one, file };

    Kind kind = Kind::lcg;
    std::uint32_t seed = 1;      // lcg
    std::uint64_t prime = 2029;  // dseq
    std::size_t length = 0;      // all kinds except file
    std::string path;            // file
};

/// Whitespace-separated decimal symbols; the same format as the ciphertext
/// body.
inline std::vector<std::uint32_t> read_symbols(std::istream& in) {
    std::vector<std::uint32_t> out;
    std::uint32_t v;
    while (in >> v) out.push_back(v);
    if (!in.eof() && in.fail()) throw FormatError("non-numeric symbol stream");
    return out;
}

inline void write_symbols(std::ostream& out, std::span<const std::uint32_t> symbols) {
    for (std::size_t i = 0; i < symbols.size(); ++i)
        out << symbols[i] << ((i + 1) % 16 == 0 || i + 1 == symbols.size() ? '\n' : ' ');
}

/// Materializes a source spec as a symbol sequence over [0, p).
/// reduced_count is nonzero only for d-sequence packing and out-of-alphabet
/// file symbols, which are reduced mod p.
inline PackedSymbols generate(const SourceSpec& spec, PrimeModulus p) {
    PackedSymbols out;
    switch (spec.kind) {
        case SourceSpec::Kind::lcg:
            out.symbols = gen_lcg(spec.seed, spec.length, p);
            break;
        case SourceSpec::Kind::dseq:
            out = pack_bits(gen_dsequence_bits(spec.prime, spec.length * bits_per_symbol(p)), p);
            break;
        case SourceSpec::Kind::zeros:
            out.symbols = gen_pattern(Pattern::zeros, spec.length);
            break;
        case SourceSpec::Kind::ones:
            out.symbols = gen_pattern(Pattern::ones, spec.length);
            break;
        case SourceSpec::Kind::zeros_last_one:
            out.symbols = gen_pattern(Pattern::zeros_last_one, spec.length);
            break;
        case SourceSpec::Kind::file: {
            std::ifstream in(spec.path);
            if (!in) throw IoError("cannot open " + spec.path);
            out.symbols = read_symbols(in);
            for (auto& s : out.symbols) {
                if (s >= p.value()) {
                    s %= p.value();
                    ++out.reduced_count;
                }
            }
            break;
        }
    }
    return out;
}

}  // namespace qhn

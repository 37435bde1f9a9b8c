// Copyright (c) 2026 the qhn authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qhn/errors.hpp"
#include "qhn/hadamard.hpp"
#include "qhn/modmath.hpp"
#include "qhn/ntt.hpp"
#include "qhn/quasigroup.hpp"

namespace qhn {

/// CBC-style additive chaining: split the input into blocks of size n, add
/// the previous output block (IV for the first) mod p, then apply the block
/// transform. With a zero IV the first block is the bare transform.
template <typename BlockFn>
std::vector<std::uint32_t> chained_block_transform(std::span<const std::uint32_t> input,
                                                   std::span<const std::uint32_t> iv,
                                                   PrimeModulus p, BlockFn&& transform) {
    const std::size_t n = iv.size();
    if (n == 0 || input.size() % n != 0)
        throw LengthNotAligned("length " + std::to_string(input.size()) +
                               " is not a multiple of block size " + std::to_string(n));
    std::vector<std::uint32_t> out;
    out.reserve(input.size());
    std::vector<std::uint32_t> prev(iv.begin(), iv.end());
    std::vector<std::uint32_t> mixed(n);
    for (std::size_t off = 0; off < input.size(); off += n) {
        for (std::size_t j = 0; j < n; ++j) mixed[j] = p.add(input[off + j], prev[j]);
        prev = transform(std::span<const std::uint32_t>(mixed));
        out.insert(out.end(), prev.begin(), prev.end());
    }
    return out;
}

/// Inverse of chained_block_transform: x_i = T^-1(c_i) - c_{i-1} mod p.
template <typename BlockFn>
std::vector<std::uint32_t> chained_block_inverse(std::span<const std::uint32_t> cipher,
                                                 std::span<const std::uint32_t> iv,
                                                 PrimeModulus p, BlockFn&& inverse) {
    const std::size_t n = iv.size();
    if (n == 0 || cipher.size() % n != 0)
        throw LengthNotAligned("length " + std::to_string(cipher.size()) +
                               " is not a multiple of block size " + std::to_string(n));
    std::vector<std::uint32_t> out;
    out.reserve(cipher.size());
    std::span<const std::uint32_t> prev = iv;
    for (std::size_t off = 0; off < cipher.size(); off += n) {
        std::span<const std::uint32_t> block = cipher.subspan(off, n);
        std::vector<std::uint32_t> x = inverse(block);
        for (std::size_t j = 0; j < n; ++j) out.push_back(p.sub(x[j], prev[j]));
        prev = block;
    }
    return out;
}

/// Parameters of the four-phase randomizer. The quasigroup order must equal
/// p so the symbol alphabet is closed across phases; the three transform
/// orders must be pairwise distinct; the NTT order must divide p-1.
struct PipelineConfig {
    PipelineConfig(PrimeModulus prime, QuasigroupKey key, unsigned h1, std::size_t ntt_n,
                   unsigned h2)
        : p(prime), qg(std::move(key)), h1_depth(h1), ntt_order(ntt_n), h2_depth(h2) {}

    PrimeModulus p;
    QuasigroupKey qg;
    unsigned h1_depth;       // phase-2 order n1 = 2^h1_depth
    std::size_t ntt_order;   // phase-3 order n2
    unsigned h2_depth;       // phase-4 order n3 = 2^h2_depth
    std::vector<std::uint32_t> iv1;  // empty means all-zero
    std::vector<std::uint32_t> iv2;
    std::vector<std::uint32_t> iv3;

    std::size_t n1() const { return std::size_t{1} << h1_depth; }
    std::size_t n2() const { return ntt_order; }
    std::size_t n3() const { return std::size_t{1} << h2_depth; }
};

/// Intermediate phase outputs, filled when a trace is passed to encrypt or
/// decrypt. Decrypt fills the fields in the order its phases run.
struct PhaseTrace {
    std::vector<std::uint32_t> phase1;
    std::vector<std::uint32_t> phase2;
    std::vector<std::uint32_t> phase3;
    std::vector<std::uint32_t> phase4;
};

/// The four-phase sequence randomizer: quasigroup chain, chained Hadamard of
/// order n1, chained NTT of order n2, chained Hadamard of order n3. All four
/// phases are invertible, so decrypt reverses them exactly.
class Pipeline {
public:
    explicit Pipeline(PipelineConfig cfg)
        : cfg_(validate(std::move(cfg))),
          h1_(cfg_.h1_depth, cfg_.p),
          ntt_(cfg_.ntt_order, cfg_.p),
          h2_(cfg_.h2_depth, cfg_.p) {}

    const PipelineConfig& config() const { return cfg_; }

    std::size_t block_lcm() const {
        std::size_t l = std::lcm(cfg_.n1(), cfg_.n2());
        return std::lcm(l, cfg_.n3());
    }

    /// Accepts exactly the lengths divisible by all three transform orders.
    void check_length(std::size_t len) const {
        if (len % cfg_.n1() != 0 || len % cfg_.n2() != 0 || len % cfg_.n3() != 0)
            throw LengthNotAligned("length " + std::to_string(len) + " must be a multiple of lcm " +
                                   std::to_string(block_lcm()));
    }

    std::vector<std::uint32_t> encrypt(std::span<const std::uint32_t> input,
                                       PhaseTrace* trace = nullptr) const {
        check_length(input.size());
        check_alphabet(input);
        std::vector<std::uint32_t> s = qg_encrypt(cfg_.qg, input);
        if (trace) trace->phase1 = s;
        s = chained_block_transform(s, cfg_.iv1, cfg_.p,
                                    [this](std::span<const std::uint32_t> b) { return h1_.forward(b); });
        if (trace) trace->phase2 = s;
        s = chained_block_transform(s, cfg_.iv2, cfg_.p,
                                    [this](std::span<const std::uint32_t> b) { return ntt_.forward(b); });
        if (trace) trace->phase3 = s;
        s = chained_block_transform(s, cfg_.iv3, cfg_.p,
                                    [this](std::span<const std::uint32_t> b) { return h2_.forward(b); });
        if (trace) trace->phase4 = s;
        return s;
    }

    std::vector<std::uint32_t> decrypt(std::span<const std::uint32_t> cipher,
                                       PhaseTrace* trace = nullptr) const {
        check_length(cipher.size());
        check_alphabet(cipher);
        std::vector<std::uint32_t> s = chained_block_inverse(
            cipher, cfg_.iv3, cfg_.p,
            [this](std::span<const std::uint32_t> b) { return h2_.inverse(b); });
        if (trace) trace->phase1 = s;
        s = chained_block_inverse(s, cfg_.iv2, cfg_.p,
                                  [this](std::span<const std::uint32_t> b) { return ntt_.inverse(b); });
        if (trace) trace->phase2 = s;
        s = chained_block_inverse(s, cfg_.iv1, cfg_.p,
                                  [this](std::span<const std::uint32_t> b) { return h1_.inverse(b); });
        if (trace) trace->phase3 = s;
        s = qg_decrypt(cfg_.qg, s);
        if (trace) trace->phase4 = s;
        return s;
    }

    const HadamardMatrix& h1() const { return h1_; }
    const NttMatrix& ntt() const { return ntt_; }
    const HadamardMatrix& h2() const { return h2_; }

private:
    static PipelineConfig validate(PipelineConfig cfg) {
        if (cfg.p.value() % 2 == 0) throw InvalidConfig("modulus must be odd");
        if (cfg.qg.table.order() != cfg.p.value())
            throw InvalidConfig("quasigroup order " + std::to_string(cfg.qg.table.order()) +
                                " != modulus " + std::to_string(cfg.p.value()));
        const std::size_t n1 = cfg.n1(), n2 = cfg.n2(), n3 = cfg.n3();
        if (n1 == n2 || n2 == n3 || n1 == n3)
            throw InvalidConfig("transform orders must be pairwise distinct, got " +
                                std::to_string(n1) + ", " + std::to_string(n2) + ", " +
                                std::to_string(n3));
        if (n2 == 0 || (cfg.p.value() - 1) % n2 != 0)
            throw InvalidConfig("NTT order " + std::to_string(n2) +
                                " does not divide p-1 = " + std::to_string(cfg.p.value() - 1));
        init_iv(cfg.iv1, n1, cfg.p.value(), "iv1");
        init_iv(cfg.iv2, n2, cfg.p.value(), "iv2");
        init_iv(cfg.iv3, n3, cfg.p.value(), "iv3");
        return cfg;
    }

    static void init_iv(std::vector<std::uint32_t>& iv, std::size_t n, std::uint32_t p,
                        const char* name) {
        if (iv.empty()) {
            iv.assign(n, 0);
            return;
        }
        if (iv.size() != n)
            throw InvalidConfig(std::string(name) + " has length " + std::to_string(iv.size()) +
                                ", expected " + std::to_string(n));
        for (std::uint32_t v : iv)
            if (v >= p)
                throw InvalidConfig(std::string(name) + " entry " + std::to_string(v) +
                                    " not in [0, " + std::to_string(p) + ")");
    }

    void check_alphabet(std::span<const std::uint32_t> s) const {
        for (std::uint32_t v : s)
            if (v >= cfg_.p.value())
                throw OutOfAlphabet("symbol " + std::to_string(v) + " not in [0, " +
                                    std::to_string(cfg_.p.value()) + ")");
    }

    PipelineConfig cfg_;
    HadamardMatrix h1_;
    NttMatrix ntt_;
    HadamardMatrix h2_;
};

/// Zero-pads to the next multiple of `align` (no-op when already aligned).
inline std::vector<std::uint32_t> pad_to_multiple(std::span<const std::uint32_t> symbols,
                                                  std::size_t align) {
    std::vector<std::uint32_t> out(symbols.begin(), symbols.end());
    if (align > 0 && out.size() % align != 0) out.resize(out.size() + (align - out.size() % align), 0);
    return out;
}

/// Parsed ciphertext file: "qhn1 p=<p> n1=<n1> n2=<n2> n3=<n3> len=<L>"
/// header, then whitespace-separated decimal symbols. `len` is the original
/// input length; the symbol count may exceed it when the input was padded.
struct CiphertextFile {
    std::uint32_t p = 0;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    std::size_t n3 = 0;
    std::size_t len = 0;
    std::vector<std::uint32_t> symbols;
};

inline void write_ciphertext(std::ostream& out, const Pipeline& pipe,
                             std::span<const std::uint32_t> symbols, std::size_t original_len) {
    const PipelineConfig& cfg = pipe.config();
    out << "qhn1 p=" << cfg.p.value() << " n1=" << cfg.n1() << " n2=" << cfg.n2()
        << " n3=" << cfg.n3() << " len=" << original_len << '\n';
    for (std::size_t i = 0; i < symbols.size(); ++i)
        out << symbols[i] << ((i + 1) % 16 == 0 || i + 1 == symbols.size() ? '\n' : ' ');
}

inline CiphertextFile read_ciphertext(std::istream& in) {
    std::string magic;
    if (!(in >> magic) || magic != "qhn1") throw FormatError("missing qhn1 ciphertext header");
    CiphertextFile f;
    bool have_p = false, have_n1 = false, have_n2 = false, have_n3 = false, have_len = false;
    for (int i = 0; i < 5; ++i) {
        std::string kv;
        if (!(in >> kv)) throw FormatError("truncated ciphertext header");
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw FormatError("bad header field: " + kv);
        const std::string key = kv.substr(0, eq);
        unsigned long long value = 0;
        try {
            value = std::stoull(kv.substr(eq + 1));
        } catch (const std::exception&) {
            throw FormatError("bad header value: " + kv);
        }
        if (key == "p") f.p = static_cast<std::uint32_t>(value), have_p = true;
        else if (key == "n1") f.n1 = value, have_n1 = true;
        else if (key == "n2") f.n2 = value, have_n2 = true;
        else if (key == "n3") f.n3 = value, have_n3 = true;
        else if (key == "len") f.len = value, have_len = true;
        else throw FormatError("unknown header field: " + key);
    }
    if (!(have_p && have_n1 && have_n2 && have_n3 && have_len))
        throw FormatError("incomplete ciphertext header");
    std::uint32_t v;
    while (in >> v) f.symbols.push_back(v);
    if (!in.eof() && in.fail()) throw FormatError("non-numeric ciphertext body");
    if (f.symbols.size() < f.len)
        throw FormatError("ciphertext holds " + std::to_string(f.symbols.size()) +
                          " symbols, header claims len=" + std::to_string(f.len));
    return f;
}

}  // namespace qhn

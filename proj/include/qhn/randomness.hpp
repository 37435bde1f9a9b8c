// Copyright (c) 2026 the qhn authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "qhn/errors.hpp"
#include "qhn/modmath.hpp"

namespace qhn {

/// Bits per symbol for alphabet [0, p): ceil(log2(p)).
inline unsigned bits_per_symbol(PrimeModulus p) {
    unsigned b = 0;
    std::uint32_t v = p.value() - 1;
    while (v > 0) {
        ++b;
        v >>= 1;
    }
    return b == 0 ? 1 : b;
}

/// Expands each symbol to its fixed-width binary form, most-significant bit
/// first. Output length is bits_per_symbol(p) * symbols.size().
inline std::vector<std::uint8_t> to_bits(std::span<const std::uint32_t> symbols, PrimeModulus p) {
    const unsigned b = bits_per_symbol(p);
    std::vector<std::uint8_t> bits;
    bits.reserve(symbols.size() * b);
    for (std::uint32_t s : symbols) {
        if (s >= p.value())
            throw OutOfAlphabet("symbol " + std::to_string(s) + " not in [0, " +
                                std::to_string(p.value()) + ")");
        for (unsigned k = b; k-- > 0;) bits.push_back(static_cast<std::uint8_t>((s >> k) & 1));
    }
    return bits;
}

/// A +-1 sequence for correlation analysis (bit 0 maps to -1, bit 1 to +1).
class BipolarSequence {
public:
    explicit BipolarSequence(std::vector<std::int8_t> values) : values_(std::move(values)) {
        for (std::int8_t v : values_)
            if (v != 1 && v != -1) throw DomainError("bipolar element must be +1 or -1");
    }

    static BipolarSequence from_bits(std::span<const std::uint8_t> bits) {
        std::vector<std::int8_t> v(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i) v[i] = bits[i] ? 1 : -1;
        return BipolarSequence(std::move(v));
    }

    std::span<const std::int8_t> values() const { return values_; }
    std::size_t size() const { return values_.size(); }

private:
    std::vector<std::int8_t> values_;
};

inline BipolarSequence to_bipolar(std::span<const std::uint8_t> bits) {
    return BipolarSequence::from_bits(bits);
}

/// Cyclic autocorrelation C(k) = (1/n) sum_j a_j * a_{(j+k) mod n} for
/// k = 0..n-1. Each lag sum is an exact integer; the single division is the
/// only rounding. C(0) = 1 always.
inline std::vector<double> autocorrelation(const BipolarSequence& s) {
    const std::size_t n = s.size();
    if (n == 0) throw EmptySequence("autocorrelation of an empty sequence");
    std::span<const std::int8_t> a = s.values();
    std::vector<double> c(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::int64_t sum = 0;
        // split at the wrap point to keep the indexing branch-free
        for (std::size_t j = 0; j + k < n; ++j) sum += static_cast<std::int64_t>(a[j]) * a[j + k];
        for (std::size_t j = n - k; j < n; ++j) sum += static_cast<std::int64_t>(a[j]) * a[j + k - n];
        c[k] = static_cast<double>(sum) / static_cast<double>(n);
    }
    return c;
}

/// R = 1 - (1/(n-1)) * sum_{k=1..n-1} |C(k)|. Near 1 for random sequences,
/// exactly 0 for constant ones.
inline double randomness_measure(std::span<const double> c) {
    const std::size_t n = c.size();
    if (n < 2) throw PeriodTooShort("randomness measure needs period >= 2");
    double sum = 0.0;
    for (std::size_t k = 1; k < n; ++k) sum += std::abs(c[k]);
    return 1.0 - sum / static_cast<double>(n - 1);
}

/// Regularized upper incomplete gamma function Q(a, x) = Gamma(a,x)/Gamma(a).
/// Power series for x < a+1, Lentz continued fraction otherwise; relative
/// tolerance 1e-10, at most 500 iterations.
inline double igamc(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0)) throw DomainError("igamc requires a > 0 and x >= 0");
    if (x == 0.0) return 1.0;

    constexpr double kRelTol = 1e-10;
    constexpr int kMaxIter = 500;
    const double log_prefactor = -x + a * std::log(x) - std::lgamma(a);

    if (x < a + 1.0) {
        // P(a,x) series: sum_{k>=0} x^k / (a(a+1)...(a+k)), scaled by the prefactor
        double term = 1.0 / a;
        double sum = term;
        for (int k = 1; k <= kMaxIter; ++k) {
            term *= x / (a + k);
            sum += term;
            if (std::abs(term) < std::abs(sum) * kRelTol) break;
        }
        return 1.0 - sum * std::exp(log_prefactor);
    }

    // Q(a,x) continued fraction, modified Lentz evaluation
    constexpr double kTiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kRelTol) break;
    }
    return std::exp(log_prefactor) * h;
}

struct BlockFrequencyResult {
    double chi2 = 0.0;
    std::size_t block_count = 0;  // N = floor(n/M)
    double p_value = 0.0;
    bool random = false;  // P-value >= 0.01
};

/// NIST block-frequency test: split into N = floor(n/M) blocks of M bits
/// (trailing bits discarded), chi2 = 4M * sum (pi_i - 1/2)^2, P-value =
/// igamc(N/2, chi2/2), non-random iff P-value < 0.01.
inline BlockFrequencyResult block_frequency_test(std::span<const std::uint8_t> bits,
                                                 std::size_t block_size) {
    const std::size_t n = bits.size();
    if (block_size < 1) throw BlockTooLarge("block size must be >= 1");
    if (block_size > n)
        throw BlockTooLarge("block size " + std::to_string(block_size) + " > sequence length " +
                            std::to_string(n));
    const std::size_t N = n / block_size;

    // chi2 = 4M sum (pi_i - 1/2)^2 = sum (2*ones_i - M)^2 / M, integer numerator
    std::int64_t numer = 0;
    for (std::size_t i = 0; i < N; ++i) {
        std::int64_t ones = 0;
        for (std::size_t j = 0; j < block_size; ++j) ones += bits[i * block_size + j];
        const std::int64_t dev = 2 * ones - static_cast<std::int64_t>(block_size);
        numer += dev * dev;
    }
    BlockFrequencyResult r;
    r.block_count = N;
    r.chi2 = static_cast<double>(numer) / static_cast<double>(block_size);
    r.p_value = igamc(static_cast<double>(N) / 2.0, r.chi2 / 2.0);
    r.random = r.p_value >= 0.01;
    return r;
}

/// Full report of both measurement procedures over one symbol sequence.
struct AnalysisReport {
    std::vector<double> autocorrelation;  // C(k), k = 0..n-1
    double r = 0.0;
    double chi2 = 0.0;
    std::size_t block_count = 0;
    std::size_t block_size = 0;
    double p_value = 0.0;
    bool random = false;
    std::size_t period = 0;  // bit count n
};

/// Runs to_bits -> to_bipolar -> autocorrelation -> randomness measure plus
/// the block-frequency test, and assembles the report.
inline AnalysisReport analyze(std::span<const std::uint32_t> symbols, PrimeModulus p,
                              std::size_t block_size) {
    const std::vector<std::uint8_t> bits = to_bits(symbols, p);
    const BipolarSequence bipolar = to_bipolar(bits);
    AnalysisReport report;
    report.period = bits.size();
    report.autocorrelation = autocorrelation(bipolar);
    report.r = randomness_measure(report.autocorrelation);
    const BlockFrequencyResult bf = block_frequency_test(bits, block_size);
    report.chi2 = bf.chi2;
    report.block_count = bf.block_count;
    report.block_size = block_size;
    report.p_value = bf.p_value;
    report.random = bf.random;
    return report;
}

/// One key=value line per report field; 6 decimal places on all reals so
/// golden-file comparisons are stable.
inline std::string format_report(const AnalysisReport& report) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(6);
    out << "r=" << report.r << '\n'
        << "chi2=" << report.chi2 << '\n'
        << "n_blocks=" << report.block_count << '\n'
        << "block_size=" << report.block_size << '\n'
        << "p_value=" << report.p_value << '\n'
        << "verdict=" << (report.random ? "random" : "non-random") << '\n';
    return out.str();
}

/// Two-column "k C(k)" data file for external plotting.
inline void write_autocorrelation(std::ostream& out, std::span<const double> c) {
    out.setf(std::ios::fixed);
    out.precision(6);
    for (std::size_t k = 0; k < c.size(); ++k) out << k << ' ' << c[k] << '\n';
}

}  // namespace qhn

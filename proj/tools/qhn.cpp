// Copyright (c) 2026 the qhn authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line frontend: stream generation, four-phase encryption and
// decryption, randomness analysis, kernel benchmarks, and a round-trip
// self-test.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qhn/errors.hpp"
#include "qhn/hadamard.hpp"
#include "qhn/modmath.hpp"
#include "qhn/ntt.hpp"
#include "qhn/pipeline.hpp"
#include "qhn/quasigroup.hpp"
#include "qhn/randomness.hpp"
#include "qhn/sources.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

std::vector<std::uint32_t> parse_iv(const std::string& text) {
    std::vector<std::uint32_t> iv;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        iv.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    }
    return iv;
}

// Flat key=value config: p, qg_table (paper7 | cyclic | path), qg_seed,
// h1_depth, ntt_order, h2_depth, optional iv1/iv2/iv3 (comma-separated).
qhn::PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw qhn::IoError("cannot open config " + path);

    std::uint32_t p_value = 0, qg_seed = 0;
    unsigned h1_depth = 0, h2_depth = 0;
    std::size_t ntt_order = 0;
    std::string qg_table = "paper7";
    std::vector<std::uint32_t> iv1, iv2, iv3;
    bool have_p = false;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        const auto end = line.find_last_not_of(" \t\r");
        line = line.substr(start, end - start + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw qhn::FormatError(path + ":" + std::to_string(lineno) + ": expected key=value");
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        try {
            if (key == "p") p_value = static_cast<std::uint32_t>(std::stoul(value)), have_p = true;
            else if (key == "qg_table") qg_table = value;
            else if (key == "qg_seed") qg_seed = static_cast<std::uint32_t>(std::stoul(value));
            else if (key == "h1_depth") h1_depth = static_cast<unsigned>(std::stoul(value));
            else if (key == "ntt_order") ntt_order = std::stoul(value);
            else if (key == "h2_depth") h2_depth = static_cast<unsigned>(std::stoul(value));
            else if (key == "iv1") iv1 = parse_iv(value);
            else if (key == "iv2") iv2 = parse_iv(value);
            else if (key == "iv3") iv3 = parse_iv(value);
            else throw qhn::FormatError(path + ":" + std::to_string(lineno) + ": unknown key " + key);
        } catch (const std::invalid_argument&) {
            throw qhn::FormatError(path + ":" + std::to_string(lineno) + ": bad number for " + key);
        } catch (const std::out_of_range&) {
            throw qhn::FormatError(path + ":" + std::to_string(lineno) + ": value out of range for " + key);
        }
    }
    if (!have_p) throw qhn::FormatError(path + ": missing required key p");

    qhn::PrimeModulus p(p_value);
    qhn::QuasigroupTable table = [&] {
        if (qg_table == "paper7") return qhn::QuasigroupTable::paper7();
        if (qg_table == "cyclic") return qhn::QuasigroupTable::cyclic(p_value);
        std::ifstream tf(qg_table);
        if (!tf) throw qhn::IoError("cannot open quasigroup table " + qg_table);
        return qhn::QuasigroupTable::read(tf);
    }();
    qhn::PipelineConfig cfg(p, qhn::QuasigroupKey(std::move(table), qg_seed), h1_depth, ntt_order,
                            h2_depth);
    cfg.iv1 = std::move(iv1);
    cfg.iv2 = std::move(iv2);
    cfg.iv3 = std::move(iv3);
    return cfg;
}

std::vector<std::uint32_t> read_symbol_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw qhn::IoError("cannot open " + path);
    return qhn::read_symbols(in);
}

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw qhn::IoError("cannot open " + path + " for writing");
    out << body;
    if (!out) throw qhn::IoError("write to " + path + " failed");
}

int cmd_gen(const std::string& kind, std::uint32_t seed, std::uint64_t prime, std::size_t length,
            std::uint32_t p_value, const std::string& in_path, const std::string& out_path) {
    qhn::SourceSpec spec;
    if (kind == "lcg") spec.kind = qhn::SourceSpec::Kind::lcg;
    else if (kind == "dseq") spec.kind = qhn::SourceSpec::Kind::dseq;
    else if (kind == "zeros") spec.kind = qhn::SourceSpec::Kind::zeros;
    else if (kind == "ones") spec.kind = qhn::SourceSpec::Kind::ones;
    else if (kind == "zeros-last-one") spec.kind = qhn::SourceSpec::Kind::zeros_last_one;
    else if (kind == "file") spec.kind = qhn::SourceSpec::Kind::file;
    else throw qhn::FormatError("unknown source kind " + kind);
    spec.seed = seed;
    spec.prime = prime;
    spec.length = length;
    spec.path = in_path;

    const qhn::PrimeModulus p(p_value);
    const qhn::PackedSymbols generated = qhn::generate(spec, p);
    if (generated.reduced_count > 0)
        std::cerr << "note: " << generated.reduced_count << " symbols >= " << p_value
                  << " were reduced mod " << p_value << '\n';
    std::ostringstream body;
    qhn::write_symbols(body, generated.symbols);
    write_text_file(out_path, body.str());
    return kExitOk;
}

int cmd_encrypt(const std::string& config_path, const std::string& in_path,
                const std::string& out_path, bool pad) {
    const qhn::Pipeline pipe(load_config(config_path));
    std::vector<std::uint32_t> input = read_symbol_file(in_path);
    const std::size_t original_len = input.size();
    if (pad) input = qhn::pad_to_multiple(input, pipe.block_lcm());
    const std::vector<std::uint32_t> cipher = pipe.encrypt(input);
    std::ostringstream body;
    qhn::write_ciphertext(body, pipe, cipher, original_len);
    write_text_file(out_path, body.str());
    return kExitOk;
}

int cmd_decrypt(const std::string& config_path, const std::string& in_path,
                const std::string& out_path) {
    const qhn::Pipeline pipe(load_config(config_path));
    std::ifstream in(in_path);
    if (!in) throw qhn::IoError("cannot open " + in_path);
    const qhn::CiphertextFile file = qhn::read_ciphertext(in);
    const qhn::PipelineConfig& cfg = pipe.config();
    if (file.p != cfg.p.value() || file.n1 != cfg.n1() || file.n2 != cfg.n2() ||
        file.n3 != cfg.n3())
        throw qhn::InvalidConfig("ciphertext header does not match config (p, n1, n2, n3)");
    std::vector<std::uint32_t> plain = pipe.decrypt(file.symbols);
    if (plain.size() < file.len)
        throw qhn::FormatError("decrypted " + std::to_string(plain.size()) +
                               " symbols, header claims len=" + std::to_string(file.len));
    plain.resize(file.len);  // drop padding
    std::ostringstream body;
    qhn::write_symbols(body, plain);
    write_text_file(out_path, body.str());
    return kExitOk;
}

int cmd_analyze(const std::string& in_path, std::uint32_t p_value, std::size_t block_size,
                const std::string& ck_path) {
    std::ifstream in(in_path);
    if (!in) throw qhn::IoError("cannot open " + in_path);
    std::vector<std::uint32_t> symbols;
    std::string first;
    if (in >> first && first == "qhn1") {
        in.seekg(0);
        const qhn::CiphertextFile file = qhn::read_ciphertext(in);
        p_value = file.p;
        symbols = file.symbols;
    } else {
        in.clear();
        in.seekg(0);
        symbols = qhn::read_symbols(in);
    }
    const qhn::AnalysisReport report = qhn::analyze(symbols, qhn::PrimeModulus(p_value), block_size);
    std::cout << qhn::format_report(report);
    if (!ck_path.empty()) {
        std::ostringstream body;
        qhn::write_autocorrelation(body, report.autocorrelation);
        write_text_file(ck_path, body.str());
    }
    return kExitOk;
}

int cmd_roundtrip(const std::string& config_path, const std::string& in_path) {
    const qhn::Pipeline pipe(load_config(config_path));
    const std::vector<std::uint32_t> input = read_symbol_file(in_path);
    const std::vector<std::uint32_t> cipher = pipe.encrypt(input);
    const std::vector<std::uint32_t> recovered = pipe.decrypt(cipher);
    if (recovered != input) {
        std::cout << "mismatch\n";
        return kExitValidation;
    }
    std::cout << "match\n";
    return kExitOk;
}

template <typename Fn>
double median_time_us(unsigned runs, Fn&& fn) {
    std::vector<double> samples(runs);
    for (auto& s : samples) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        s = std::chrono::duration<double, std::micro>(t1 - t0).count();
    }
    std::sort(samples.begin(), samples.end());
    return samples[samples.size() / 2];
}

int cmd_bench(unsigned runs, unsigned max_depth) {
    std::mt19937 rng(12345);
    std::cout << "kernel    order  naive_us      fast_us       speedup  equal\n";

    const qhn::PrimeModulus hp(257);
    for (unsigned m = 1; m <= max_depth; ++m) {
        const qhn::HadamardMatrix h(m, hp);
        std::vector<std::uint32_t> block(h.order());
        for (auto& v : block) v = rng() % hp.value();
        volatile std::uint32_t sink = 0;
        const double naive_us = median_time_us(runs, [&] { sink = sink + h.forward_naive(block)[0]; });
        const double fast_us = median_time_us(runs, [&] { sink = sink + h.forward_fast(block)[0]; });
        const bool equal = h.forward_naive(block) == h.forward_fast(block);
        std::printf("hadamard %6zu  %12.2f  %12.2f  %7.1fx  %s\n", h.order(), naive_us, fast_us,
                    naive_us / (fast_us > 0 ? fast_us : 1e-3), equal ? "yes" : "NO");
    }

    const qhn::PrimeModulus np(65537);
    for (unsigned m = 1; m <= std::min(max_depth, 12u); ++m) {
        const qhn::NttMatrix ntt(std::size_t{1} << m, np);
        std::vector<std::uint32_t> block(ntt.order());
        for (auto& v : block) v = rng() % np.value();
        volatile std::uint32_t sink = 0;
        const double naive_us = median_time_us(runs, [&] { sink = sink + ntt.forward_naive(block)[0]; });
        const double fast_us = median_time_us(runs, [&] { sink = sink + ntt.forward_fast(block)[0]; });
        const bool equal = ntt.forward_naive(block) == ntt.forward_fast(block);
        std::printf("ntt      %6zu  %12.2f  %12.2f  %7.1fx  %s\n", ntt.order(), naive_us, fast_us,
                    naive_us / (fast_us > 0 ? fast_us : 1e-3), equal ? "yes" : "NO");
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qhn: quasigroup + Hadamard + NTT sequence randomizer"};
    app.require_subcommand(1);

    std::string config_path, in_path, out_path, ck_path, kind = "lcg";
    std::uint32_t seed = 1, p_value = 7;
    std::uint64_t dseq_prime = 2029;
    std::size_t length = 0, block_size = 18;
    bool pad = false;
    unsigned runs = 5, max_depth = 12;

    auto* gen = app.add_subcommand("gen", "Generate a symbol stream");
    gen->add_option("--kind", kind, "lcg | dseq | zeros | ones | zeros-last-one | file")
        ->check(CLI::IsMember({"lcg", "dseq", "zeros", "ones", "zeros-last-one", "file"}));
    gen->add_option("--seed", seed, "LCG seed in [1, 2^31-2]");
    gen->add_option("--prime", dseq_prime, "d-sequence prime");
    gen->add_option("--length", length, "number of symbols")->required();
    gen->add_option("--p", p_value, "symbol alphabet modulus");
    gen->add_option("--in", in_path, "input path (kind=file)");
    gen->add_option("--out", out_path, "output stream path")->required();

    auto* enc = app.add_subcommand("encrypt", "Run the four-phase encryption");
    enc->add_option("--config", config_path, "pipeline config file")->required();
    enc->add_option("--in", in_path, "input symbol stream")->required();
    enc->add_option("--out", out_path, "output ciphertext file")->required();
    enc->add_flag("--pad", pad, "zero-pad input to the block lcm");

    auto* dec = app.add_subcommand("decrypt", "Invert the four-phase encryption");
    dec->add_option("--config", config_path, "pipeline config file")->required();
    dec->add_option("--in", in_path, "input ciphertext file")->required();
    dec->add_option("--out", out_path, "output symbol stream")->required();

    auto* ana = app.add_subcommand("analyze", "Autocorrelation and block-frequency report");
    ana->add_option("--in", in_path, "symbol stream or ciphertext file")->required();
    ana->add_option("--p", p_value, "alphabet modulus for raw streams");
    ana->add_option("--m", block_size, "block-frequency block size M");
    ana->add_option("--ck-out", ck_path, "write k C(k) pairs to this file");

    auto* rt = app.add_subcommand("roundtrip", "Encrypt, decrypt, and compare");
    rt->add_option("--config", config_path, "pipeline config file")->required();
    rt->add_option("--in", in_path, "input symbol stream")->required();

    auto* bench = app.add_subcommand("bench", "Time naive vs fast kernels");
    bench->add_option("--runs", runs, "timing repetitions per size");
    bench->add_option("--max-depth", max_depth, "largest power-of-two order 2^d");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (*gen) return cmd_gen(kind, seed, dseq_prime, length, p_value, in_path, out_path);
        if (*enc) return cmd_encrypt(config_path, in_path, out_path, pad);
        if (*dec) return cmd_decrypt(config_path, in_path, out_path);
        if (*ana) return cmd_analyze(in_path, p_value, block_size, ck_path);
        if (*rt) return cmd_roundtrip(config_path, in_path);
        if (*bench) return cmd_bench(runs, max_depth);
    } catch (const qhn::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const qhn::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitOk;
}

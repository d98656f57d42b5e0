// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#include <doctest.h>

#include <random>

#include "chirpjrc/channel.hpp"
#include "chirpjrc/comms_rx.hpp"
#include "chirpjrc/error.hpp"

using namespace chirpjrc;

namespace {

std::vector<std::uint8_t> random_bits(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> bits(n);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1U);
    return bits;
}

ComplexSignal transmit(CommsScheme s, const WaveformParams& p, std::span<const std::uint8_t> bits) {
    return s == CommsScheme::Proposed ? modulate_bits(p, bits) : modulate_bits_lfm(p, bits);
}

std::size_t count_errors(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    std::size_t e = 0;
    for (std::size_t i = 0; i < a.size(); ++i) e += a[i] != b[i];
    return e;
}

}  // namespace

TEST_CASE("scheme names") {
    CHECK(parse_scheme("proposed") == CommsScheme::Proposed);
    CHECK(parse_scheme("lfm_mf") == CommsScheme::LfmMf);
    CHECK(scheme_name(CommsScheme::LfmMf) == "lfm_mf");
    CHECK_THROWS_AS((void)parse_scheme("fsk"), ParameterError);
    const auto p = WaveformParams::desk();
    CHECK(samples_per_bit(CommsScheme::Proposed, p) == 2160);
    CHECK(samples_per_bit(CommsScheme::LfmMf, p) == 2160);
}

TEST_CASE("branches separate the two symbols") {
    for (const auto& p : {WaveformParams::paper(), WaveformParams::desk()}) {
        const auto tri = demodulate_symbol(gen_symbol(p, SymbolShape::TriangleLFM), p);
        const auto vee = demodulate_symbol(gen_symbol(p, SymbolShape::VLFM), p);
        CHECK(tri.branch_tri == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(tri.branch_v < 0.1);
        CHECK(vee.branch_v == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(vee.branch_tri < 0.1);
        CHECK(tri.decided_bit == 1);
        CHECK(vee.decided_bit == 0);
    }
}

TEST_CASE("decisions ignore the carrier phase") {
    const auto p = WaveformParams::desk();
    for (auto s : {CommsScheme::Proposed, CommsScheme::LfmMf}) {
        const std::vector<std::uint8_t> bit{0};
        const auto x = transmit(s, p, bit);
        auto y = x;
        for (std::size_t n = 0; n < y.size(); ++n) y[n] *= std::polar(1.0, 2.1);
        const Demodulator demod(p, s);
        const auto a = demod.decide(x.samples());
        const auto b = demod.decide(y.samples());
        CHECK(a.branch_tri == doctest::Approx(b.branch_tri).epsilon(1e-10));
        CHECK(a.branch_v == doctest::Approx(b.branch_v).epsilon(1e-10));
        CHECK(a.decided_bit == 0);
    }
}

TEST_CASE("noiseless loopback") {
    const auto p = WaveformParams::desk();
    const auto bits = random_bits(64, 3);
    for (auto s : {CommsScheme::Proposed, CommsScheme::LfmMf}) {
        CAPTURE(scheme_name(s));
        std::vector<DecisionStatistics> stats;
        CHECK(demodulate_stream(transmit(s, p, bits), bits.size(), s, p, &stats) == bits);
        CHECK(stats.size() == bits.size());
        const auto faded = apply_rician(transmit(s, p, bits), {1e12, 5}, samples_per_bit(s, p));
        CHECK(demodulate_stream(faded, bits.size(), s, p) == bits);
    }
    const auto lfm = demodulate_symbol_lfm_mf(gen_lfm_pulse(p, ChirpDirection::Up), p);
    CHECK(lfm.decided_bit == 1);
    CHECK(lfm.branch_tri > 10.0 * lfm.branch_v);
}

TEST_CASE("noiseless Rician fading never flips a bit") {
    const auto p = WaveformParams::desk();
    const std::size_t chunk = 1000;
    struct Run { CommsScheme scheme; std::size_t bits; };
    for (const Run run : {Run{CommsScheme::Proposed, 100'000}, Run{CommsScheme::LfmMf, 10'000}}) {
        std::size_t errors = 0;
        for (std::size_t c = 0; c < run.bits / chunk; ++c) {
            const auto bits = random_bits(chunk, derive_seed(11, c));
            const auto rx = apply_rician(transmit(run.scheme, p, bits), {10.0, derive_seed(12, c)},
                                         samples_per_bit(run.scheme, p));
            errors += count_errors(demodulate_stream(rx, chunk, run.scheme, p), bits);
        }
        CHECK(errors == 0);
    }
}

TEST_CASE("ties decide one") {
    const auto p = WaveformParams::desk();
    const ComplexSignal silence(std::vector<cdouble>(p.samples_per_symbol()), p.fs);
    const auto d = demodulate_symbol(silence, p);
    CHECK(d.branch_tri == 0.0);
    CHECK(d.branch_v == 0.0);
    CHECK(d.decided_bit == 1);
    const ComplexSignal quiet(std::vector<cdouble>(samples_per_bit(CommsScheme::LfmMf, p)), 2 * p.fs);
    CHECK(demodulate_symbol_lfm_mf(quiet, p).decided_bit == 1);
}

TEST_CASE("length and rate checks") {
    const auto p = WaveformParams::desk();
    const auto sym = gen_symbol(p, SymbolShape::TriangleLFM);
    CHECK_THROWS_AS((void)demodulate_symbol(sym.slice(0, 100), p), ParameterError);
    CHECK_THROWS_AS((void)demodulate_symbol_lfm_mf(sym, p), ParameterError);
    const Demodulator demod(p, CommsScheme::Proposed);
    CHECK(demod.symbol_samples() == sym.size());
    CHECK(demod.sample_rate() == p.fs);
    CHECK_THROWS_AS((void)demod.decide(sym.samples().subspan(1)), ParameterError);
    const std::vector<std::uint8_t> bits{1, 0};
    CHECK_THROWS_AS((void)demodulate_stream(modulate_bits(p, bits), 3, CommsScheme::Proposed, p), ParameterError);
    CHECK_THROWS_AS((void)demodulate_stream(modulate_bits(p, bits), 2, CommsScheme::LfmMf, p), ParameterError);
}

TEST_CASE("dechirp receiver beats the matched-filter baseline in noise") {
    const auto p = WaveformParams::desk();
    const std::size_t n = 2000;
    const auto bits = random_bits(n, 21);
    std::size_t errors[2] = {0, 0};
    for (auto s : {CommsScheme::Proposed, CommsScheme::LfmMf}) {
        const auto tx = transmit(s, p, bits);
        AwgnOptions opts;
        opts.reference = SnrReference::PerSymbol;
        opts.symbol_samples = samples_per_bit(s, p);
        opts.reference_power = tx.mean_power();
        const auto rx = add_awgn(tx, 10.0, 22, opts);
        errors[static_cast<int>(s)] = count_errors(demodulate_stream(rx, n, s, p), bits);
    }
    MESSAGE("errors at 10 dB: proposed " << errors[0] << ", lfm_mf " << errors[1]);
    CHECK(errors[0] < errors[1]);
    CHECK(errors[0] < n / 50);
}

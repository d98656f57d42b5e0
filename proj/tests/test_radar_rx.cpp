// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "chirpjrc/channel.hpp"
#include "chirpjrc/error.hpp"
#include "chirpjrc/radar_rx.hpp"

using namespace chirpjrc;

namespace {

constexpr double kPi = std::numbers::pi;

ComplexSignal tone(double f, double fs, std::size_t n, double amp = 1.0) {
    std::vector<cdouble> x(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = std::polar(amp, 2 * kPi * f * static_cast<double>(k) / fs);
    return {std::move(x), fs};
}

double dtft_mag(std::span<const cdouble> x, double f, double fs) {
    cdouble acc{};
    for (std::size_t k = 0; k < x.size(); ++k) {
        acc += x[k] * std::polar(1.0, -2 * kPi * f * static_cast<double>(k) / fs);
    }
    return std::abs(acc);
}

// Periodogram peak: coarse grid over (-fs/2, fs/2], then golden-section refinement.
double dtft_peak(std::span<const cdouble> x, double fs) {
    const int grid = 4 * static_cast<int>(x.size());
    double best_f = 0.0, best = -1.0;
    for (int i = 0; i < grid; ++i) {
        const double f = -0.5 * fs + fs * (i + 0.5) / grid;
        const double m = dtft_mag(x, f, fs);
        if (m > best) {
            best = m;
            best_f = f;
        }
    }
    double a = best_f - fs / grid, b = best_f + fs / grid;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 80; ++it) {
        const double c = b - g * (b - a), d = a + g * (b - a);
        if (dtft_mag(x, c, fs) > dtft_mag(x, d, fs)) b = d; else a = c;
    }
    return 0.5 * (a + b);
}

double wrap_hz(double f, double fs) { return f - fs * std::round(f / fs); }

ComplexSignal echo_of(const WaveformParams& p, SymbolShape shape, const DebrisTarget& t) {
    return echo(gen_symbol(p, shape), t, p);
}

}  // namespace

TEST_CASE("receiver defaults and validation") {
    CHECK(ReceiverConfig::defaults_for(WaveformParams::paper()).decimation == 5);
    CHECK(ReceiverConfig::defaults_for(WaveformParams::desk()).decimation == 1);
    auto cfg = ReceiverConfig::defaults_for(WaveformParams::paper());
    cfg.decimation = 50;
    CHECK_THROWS_AS(cfg.validate(WaveformParams::paper()), ParameterError);
    cfg = {};
    cfg.edge_trim_fraction = 0.3;
    CHECK_THROWS_AS(cfg.validate(WaveformParams::desk()), ParameterError);
    cfg = {};
    cfg.max_subarray = 1;
    CHECK_THROWS_AS(cfg.validate(WaveformParams::desk()), ParameterError);
}

TEST_CASE("dechirped halves carry fd -+ mu tau") {
    const auto p = WaveformParams::desk();
    const DebrisTarget t{250.0, 10'000.0, 1.0, 0.3};
    const auto rx = echo_of(p, SymbolShape::TriangleLFM, t).slice(0, p.samples_per_symbol());
    const auto mixed = dechirp(rx, gen_symbol(p, SymbolShape::TriangleLFM));
    const std::size_t half = p.samples_per_half();
    const std::size_t skip = static_cast<std::size_t>(std::ceil(t.delay() * p.fs)) + 2;
    const auto up = mixed.samples().subspan(skip, half - skip - 2);
    const auto down = mixed.samples().subspan(half + skip, half - skip - 2);
    // Same beats as the full-scale preset: the slope and carrier are unchanged.
    const double b_up = 21.082e6, b_down = 24.284e6;
    CHECK(t.doppler(p) - p.mu() * t.delay() == doctest::Approx(b_up).epsilon(1e-4));
    CHECK(t.doppler(p) + p.mu() * t.delay() == doctest::Approx(b_down).epsilon(1e-4));
    CHECK(std::abs(wrap_hz(dtft_peak(up, p.fs) - b_up, p.fs)) < 5e3);
    CHECK(std::abs(wrap_hz(dtft_peak(down, p.fs) - b_down, p.fs)) < 5e3);

    CHECK_THROWS_AS((void)dechirp(rx, rx.slice(0, 10)), ParameterError);
    CHECK_THROWS_AS((void)dechirp(rx, ComplexSignal(std::vector<cdouble>(rx.size()), 2 * p.fs)),
                    ParameterError);
}

TEST_CASE("root-MUSIC tone accuracy at 20 dB") {
    const double fs = 72e6, f = 21.082e6;
    const auto clean = tone(f, fs, 4096);
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto r = root_music(add_awgn(clean, 20.0, derive_seed(99, seed)), 1);
        worst = std::max(worst, std::abs(r.frequency_hz - f));
    }
    CHECK(worst <= 1e3);
    const auto r = root_music(clean, 1);
    CHECK(r.frequency_hz == doctest::Approx(f).epsilon(1e-9));
    CHECK(r.subarray == 64);
    CHECK(r.snapshots == 4096 - 63);
    CHECK(r.root_modulus == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("root-MUSIC edge cases") {
    const double fs = 1e6;
    SUBCASE("DC") {
        const auto r = root_music(tone(0.0, fs, 600, 2.0), 1);
        CHECK(std::abs(r.frequency_hz) < 1.0);
    }
    SUBCASE("negative frequency") {
        CHECK(root_music(tone(-123.4e3, fs, 600), 1).frequency_hz == doctest::Approx(-123.4e3).epsilon(1e-8));
    }
    SUBCASE("two tones pick the stronger") {
        auto x = tone(50e3, fs, 900);
        const auto y = tone(-210e3, fs, 900, 0.5);
        for (std::size_t k = 0; k < x.size(); ++k) x[k] += y[k];
        const auto r = root_music(add_awgn(x, 30.0, 4), 2, 40);
        CHECK(std::abs(r.frequency_hz - 50e3) < 1e3);
        auto z = tone(50e3, fs, 900, 0.5);
        const auto w = tone(-210e3, fs, 900);
        for (std::size_t k = 0; k < z.size(); ++k) z[k] += w[k];
        CHECK(std::abs(root_music(add_awgn(z, 30.0, 4), 2, 40).frequency_hz + 210e3) < 1e3);
    }
    SUBCASE("rank deficiency") {
        const ComplexSignal zero(std::vector<cdouble>(300), fs);
        CHECK_THROWS_AS((void)root_music(zero, 1), EstimationError);
        CHECK_THROWS_AS((void)root_music(tone(0.0, fs, 300), 2), EstimationError);
    }
    SUBCASE("argument checks") {
        CHECK_THROWS_AS((void)root_music(tone(1e3, fs, 30), 1, 20), ParameterError);
        CHECK_THROWS_AS((void)root_music(tone(1e3, fs, 300), 0), ParameterError);
        CHECK_THROWS_AS((void)root_music(tone(1e3, fs, 300), 8, 8), ParameterError);
    }
}

TEST_CASE("decimation keeps the tone and rejects the stop band") {
    const double fs = 36e6;
    const auto x = tone(2e6, fs, 20000);
    const auto same = decimate(x, 1, 1e6);
    CHECK(same.size() == x.size());
    CHECK(same[123] == x[123]);

    const auto d = decimate(x, 5, 3e6);
    CHECK(d.fs() == doctest::Approx(fs / 5));
    CHECK(std::abs(dtft_peak(d.samples(), d.fs()) - 2e6) <= 10.0);
    // The output time base lines up with the input phase.
    for (std::size_t m = 0; m < d.size(); m += 97) {
        const cdouble want = std::polar(1.0, 2 * kPi * 2e6 * d.time(m));
        CHECK(std::arg(d[m] * std::conj(want)) == doctest::Approx(std::arg(d[0] * std::conj(std::polar(1.0, 2 * kPi * 2e6 * d.time(0))))).epsilon(1e-6));
    }

    const auto stop = decimate(tone(10e6, fs, 20000), 5, 3e6);
    CHECK(stop.mean_power() < 1e-4);
    CHECK_THROWS_AS((void)decimate(x, 5, 3.7e6), ParameterError);
    CHECK_THROWS_AS((void)decimate(x, 0, 1e6), ParameterError);
    CHECK_THROWS_AS((void)decimate(tone(0.0, fs, 50), 5, 1e6), ParameterError);
}

TEST_CASE("noiseless closed loop on the desk preset") {
    const auto p = WaveformParams::desk();
    const auto cfg = ReceiverConfig::defaults_for(p);
    const DebrisTarget targets[] = {
        {250.0, 10'000.0, 1.0, 0.0}, {30.0, 3'000.0, 0.5, 2.0}, {480.0, 14'500.0, 1.0, -1.0}, {5.0, 9'000.0, 1.0, 0.7}};
    for (const auto& t : targets) {
        for (auto shape : {SymbolShape::TriangleLFM, SymbolShape::VLFM}) {
            CAPTURE(t.range_m);
            CAPTURE(static_cast<int>(shape));
            const auto res = estimate_target(echo_of(p, shape, t), shape, p, cfg);
            CHECK(std::abs(res.range_m - t.range_m) < 0.5);
            CHECK(std::abs(res.velocity_mps - t.velocity_mps) < 2.0);
            CHECK(res.beat.f_up == doctest::Approx(t.doppler(p) - p.mu() * t.delay()).epsilon(1e-4));
            CHECK(res.beat.f_down == doctest::Approx(t.doppler(p) + p.mu() * t.delay()).epsilon(1e-4));
        }
    }
}

TEST_CASE("full-scale preset closed loop") {
    const auto p = WaveformParams::paper();
    const auto cfg = ReceiverConfig::defaults_for(p);
    const DebrisTarget t{250.0, 10'000.0, 1.0, 0.4};
    const auto res = estimate_target(echo_of(p, SymbolShape::TriangleLFM, t), SymbolShape::TriangleLFM, p, cfg);
    CHECK(std::abs(res.range_m - t.range_m) < 0.5);
    CHECK(std::abs(res.velocity_mps - t.velocity_mps) < 2.0);
}

TEST_CASE("triangle and V symbols give the same estimate") {
    const auto p = WaveformParams::desk();
    const auto cfg = ReceiverConfig::defaults_for(p);
    const DebrisTarget t{321.0, 7'654.0, 1.0, 1.5};
    const auto tri = estimate_target(echo_of(p, SymbolShape::TriangleLFM, t), SymbolShape::TriangleLFM, p, cfg);
    const auto vee = estimate_target(echo_of(p, SymbolShape::VLFM, t), SymbolShape::VLFM, p, cfg);
    CHECK(tri.range_m == doctest::Approx(vee.range_m).epsilon(1e-3));
    CHECK(tri.velocity_mps == doctest::Approx(vee.velocity_mps).epsilon(1e-5));
    // The triangle sweeps up first, the V down first.
    CHECK(tri.first.signed_beat_hz == doctest::Approx(vee.second.signed_beat_hz).epsilon(1e-5));
    CHECK(tri.second.signed_beat_hz == doctest::Approx(vee.first.signed_beat_hz).epsilon(1e-5));
}

TEST_CASE("range error does not depend on velocity; FMCW range bias does") {
    const auto p = WaveformParams::desk();
    const auto cfg = ReceiverConfig::defaults_for(p);
    for (double v : {2'000.0, 6'000.0, 10'000.0, 14'000.0}) {
        CAPTURE(v);
        const DebrisTarget t{250.0, v, 1.0, 0.0};
        const auto tri = estimate_target(echo_of(p, SymbolShape::TriangleLFM, t), SymbolShape::TriangleLFM, p, cfg);
        CHECK(std::abs(tri.range_m - t.range_m) < 0.5);

        const auto fm = estimate_target_fmcw(echo(gen_fmcw_frame(p), t, p), p, cfg);
        const double bias = t.doppler(p) * p.t_half * kSpeedOfLight / (2.0 * p.delta_f);
        CHECK(std::abs((t.range_m - fm.range_m) - bias) < 1.0);
    }
}

TEST_CASE("FMCW baseline on a static target") {
    const auto p = WaveformParams::desk();
    auto cfg = ReceiverConfig::defaults_for(p);
    const DebrisTarget t{250.0, 0.0, 1.0, 0.2};
    const auto fm = estimate_target_fmcw(echo(gen_fmcw_frame(p), t, p), p, cfg);
    CHECK(std::abs(fm.range_m - 250.0) < 0.5);
    // The cycle count between ramps is read off the beat, which carries -mu tau:
    // the velocity is low by mu tau lambda / 2, to within one cycle.
    const double coupling = p.mu() * t.delay() * p.lambda() / 2.0;
    const double cycle = p.lambda() / (2.0 * p.t_half);
    CHECK(std::abs(fm.velocity_mps + coupling) <= cycle);
}

TEST_CASE("regime handling") {
    const auto p = WaveformParams::desk();
    auto cfg = ReceiverConfig::defaults_for(p);
    const DebrisTarget still{200.0, 0.0, 1.0, 0.0};
    const auto rx = echo_of(p, SymbolShape::TriangleLFM, still);
    CHECK_THROWS_AS((void)estimate_target(rx, SymbolShape::TriangleLFM, p, cfg), AmbiguousRegimeError);
    const DebrisTarget slow{400.0, 100.0, 1.0, 0.0};
    CHECK_THROWS_AS((void)estimate_target(echo_of(p, SymbolShape::VLFM, slow), SymbolShape::VLFM, p, cfg),
                    AmbiguousRegimeError);

    cfg.enforce_regime = false;
    const auto res = estimate_target(rx, SymbolShape::TriangleLFM, p, cfg);
    CHECK(std::abs(res.range_m - 200.0) < 0.5);
    CHECK(std::abs(res.velocity_mps) < 2.0);

    CHECK_THROWS_AS((void)estimate_target(rx.slice(0, 100), SymbolShape::TriangleLFM, p, cfg), ParameterError);
    const ComplexSignal wrong_rate(std::vector<cdouble>(rx.samples().begin(), rx.samples().end()), 2 * p.fs);
    CHECK_THROWS_AS((void)estimate_target(wrong_rate, SymbolShape::TriangleLFM, p, cfg), ParameterError);
}

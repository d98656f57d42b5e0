// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#include "chirpjrc/waveform.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "chirpjrc/error.hpp"

namespace chirpjrc {

namespace {

constexpr double kPi = std::numbers::pi;

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

std::vector<cdouble> quadratic_phase(std::size_t n, double fs, double t0, double t_center,
                                     double sign_mu, double amplitude) {
    std::vector<cdouble> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = t0 + static_cast<double>(i) / fs - t_center;
        out[i] = std::polar(amplitude, sign_mu * kPi * t * t);
    }
    return out;
}

}  // namespace

std::size_t WaveformParams::samples_per_half() const {
    const double n = std::round(t_half * fs);
    if (!(n >= 2.0) || !std::isfinite(n)) {
        throw ParameterError("t_half * fs must give at least 2 samples per chirp");
    }
    return static_cast<std::size_t>(n);
}

void WaveformParams::validate() const {
    if (!positive_finite(f0)) throw ParameterError("f0 must be > 0");
    if (!positive_finite(delta_f)) throw ParameterError("delta_f must be > 0");
    if (!positive_finite(t_half)) throw ParameterError("t_half must be > 0");
    if (!positive_finite(fs)) throw ParameterError("fs must be > 0");
    if (fs < 1.25 * delta_f * (1.0 - 1e-12)) {
        throw ParameterError("fs must be >= 1.25 * delta_f");
    }
    (void)samples_per_half();
}

WaveformParams WaveformParams::paper() { return {340e9, 288e6, 300e-6, 360e6}; }

WaveformParams WaveformParams::desk() { return {340e9, 28.8e6, 30e-6, 36e6}; }

WaveformParams WaveformParams::preset(std::string_view name) {
    if (name == "paper") return paper();
    if (name == "desk") return desk();
    throw ParameterError("unknown preset '" + std::string(name) + "' (expected paper|desk)");
}

ComplexSignal gen_chirp(const WaveformParams& params, ChirpDirection dir, double duration) {
    params.validate();
    if (!positive_finite(duration)) throw ParameterError("chirp duration must be > 0");
    const double count = std::round(duration * params.fs);
    if (count < 2.0) throw ParameterError("chirp duration must cover at least 2 samples");
    const auto n = static_cast<std::size_t>(count);
    const double sign = dir == ChirpDirection::Up ? 1.0 : -1.0;
    const double amp = std::sqrt(params.fs / static_cast<double>(n));
    return {quadratic_phase(n, params.fs, 0.0, 0.0, sign * params.mu(), amp), params.fs, 0.0};
}

cdouble symbol_envelope(const WaveformParams& params, SymbolShape shape, double t) {
    const double T = params.t_half;
    if (t < -T || t >= T) return {0.0, 0.0};
    const double duration = static_cast<double>(params.samples_per_symbol()) / params.fs;
    const double amp = 1.0 / std::sqrt(duration);
    // TriangleLFM: +mu before the apex, -mu after. VLFM is the conjugate.
    double sign = t < 0.0 ? 1.0 : -1.0;
    if (shape == SymbolShape::VLFM) sign = -sign;
    return std::polar(amp, sign * kPi * params.mu() * t * t);
}

ComplexSignal gen_symbol(const WaveformParams& params, SymbolShape shape) {
    params.validate();
    const std::size_t half = params.samples_per_half();
    const std::size_t n = 2 * half;
    const double amp = std::sqrt(params.fs / static_cast<double>(n));
    const double mu = params.mu();
    const double first = shape == SymbolShape::TriangleLFM ? mu : -mu;
    const double t0 = -static_cast<double>(half) / params.fs;

    std::vector<cdouble> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        // Integer offset from the apex keeps t = 0 exact on sample `half`.
        const double t = (static_cast<double>(i) - static_cast<double>(half)) / params.fs;
        const double slope = i < half ? first : -first;
        out[i] = std::polar(amp, slope * kPi * t * t);
    }
    return {std::move(out), params.fs, t0};
}

ComplexSignal modulate_bits(const WaveformParams& params, std::span<const std::uint8_t> bits) {
    if (bits.empty()) throw ParameterError("bit sequence must be nonempty");
    const ComplexSignal tri = gen_symbol(params, SymbolShape::TriangleLFM);
    const ComplexSignal vee = gen_symbol(params, SymbolShape::VLFM);
    std::vector<cdouble> out;
    out.reserve(bits.size() * tri.size());
    for (const auto b : bits) {
        const auto& sym = b != 0 ? tri : vee;
        out.insert(out.end(), sym.samples().begin(), sym.samples().end());
    }
    return {std::move(out), params.fs, tri.t_start()};
}

std::vector<double> instantaneous_frequency(const ComplexSignal& sig) {
    if (sig.size() < 2) throw ParameterError("instantaneous frequency needs at least 2 samples");
    const double fs = sig.fs();
    const double scale = fs / (2.0 * kPi);
    std::vector<double> f(sig.size() - 1);
    for (std::size_t n = 0; n + 1 < sig.size(); ++n) {
        const double d = std::arg(sig[n + 1] * std::conj(sig[n])) * scale;
        if (n == 0) {
            f[n] = d;
        } else {
            const double k = std::round((f[n - 1] - d) / fs);
            f[n] = d + k * fs;
        }
    }
    double mean = 0.0;
    for (const double v : f) mean += v;
    mean /= static_cast<double>(f.size());
    const double shift = std::ceil(mean / fs - 0.5) * fs;
    if (shift != 0.0) {
        for (double& v : f) v -= shift;
    }
    return f;
}

ComplexSignal gen_fmcw_frame(const WaveformParams& params) {
    params.validate();
    const std::size_t half = params.samples_per_half();
    const double amp = std::sqrt(params.fs / static_cast<double>(2 * half));
    const double mu = params.mu();
    std::vector<cdouble> out(2 * half);
    for (std::size_t i = 0; i < half; ++i) {
        const double t = (static_cast<double>(i) - static_cast<double>(half)) / params.fs;
        out[i] = std::polar(amp, kPi * mu * t * t);
        out[i + half] = out[i];
    }
    return {std::move(out), params.fs, -static_cast<double>(half) / params.fs};
}

ComplexSignal gen_lfm_pulse(const WaveformParams& params, ChirpDirection dir) {
    params.validate();
    const double fs2 = 2.0 * params.fs;
    const std::size_t n = 2 * params.samples_per_half();
    const double amp = std::sqrt(fs2 / static_cast<double>(n));
    const double sign = dir == ChirpDirection::Up ? 1.0 : -1.0;
    const double center = 0.5 * static_cast<double>(n) / fs2;
    return {quadratic_phase(n, fs2, 0.0, center, sign * params.mu(), amp), fs2, 0.0};
}

ComplexSignal modulate_bits_lfm(const WaveformParams& params, std::span<const std::uint8_t> bits) {
    if (bits.empty()) throw ParameterError("bit sequence must be nonempty");
    const ComplexSignal up = gen_lfm_pulse(params, ChirpDirection::Up);
    const ComplexSignal down = gen_lfm_pulse(params, ChirpDirection::Down);
    std::vector<cdouble> out;
    out.reserve(bits.size() * up.size());
    for (const auto b : bits) {
        const auto& sym = b != 0 ? up : down;
        out.insert(out.end(), sym.samples().begin(), sym.samples().end());
    }
    return {std::move(out), up.fs(), 0.0};
}

}  // namespace chirpjrc

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#include "chirpjrc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "chirpjrc/error.hpp"
#include "chirpjrc/fft.hpp"

namespace chirpjrc {

namespace {

constexpr double kPi = std::numbers::pi;

// Spectral centroid on the circle: the band centre modulo fs.
double spectral_center(std::span<const cdouble> spectrum, double fs) {
    const auto m = static_cast<double>(spectrum.size());
    cdouble acc{};
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        acc += std::norm(spectrum[k]) * std::polar(1.0, 2.0 * kPi * static_cast<double>(k) / m);
    }
    if (std::abs(acc) == 0.0) return 0.0;
    return std::arg(acc) / (2.0 * kPi) * fs;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

void DebrisTarget::validate(const WaveformParams& p) const {
    if (!(range_m > 0.0) || range_m > kMaxRangeM) {
        throw ParameterError("target range must be in (0, 500] m");
    }
    if (!std::isfinite(velocity_mps) || std::abs(velocity_mps) > kMaxSpeedMps) {
        throw ParameterError("target speed must be at most 15 km/s");
    }
    if (!std::isfinite(amplitude) || !std::isfinite(phase)) {
        throw ParameterError("target amplitude and phase must be finite");
    }
    if (delay() >= p.t_half) {
        throw BlindSpotError("round-trip delay must be shorter than the chirp duration");
    }
}

void ScenarioDistribution::validate() const {
    if (!(range_std_m > 0.0) || !(velocity_std_mps > 0.0)) {
        throw ParameterError("scenario standard deviations must be > 0");
    }
    if (!(range_mean_m > 0.0 && range_mean_m <= kMaxRangeM)) {
        throw ParameterError("scenario range mean must lie in (0, 500] m");
    }
    if (!(velocity_mean_mps > 0.0 && velocity_mean_mps <= kMaxSpeedMps)) {
        throw ParameterError("scenario velocity mean must lie in (0, 15000] m/s");
    }
}

ComplexSignal echo(const ComplexSignal& tx, const DebrisTarget& target,
                   const WaveformParams& params) {
    params.validate();
    target.validate(params);
    const std::size_t n = tx.size();
    const std::size_t m = 2 * n;
    const double fs = tx.fs();
    const double tau = target.delay();
    const double fd = target.doppler(params);

    std::vector<cdouble> buf(m, cdouble{});
    std::copy(tx.samples().begin(), tx.samples().end(), buf.begin());
    fft::forward(buf);

    const double center = spectral_center(buf, fs);
    const double lo = center - 0.5 * fs;
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < m; ++k) {
        double f = static_cast<double>(k) * fs * inv_m;
        f -= fs * std::floor((f - lo) / fs);
        buf[k] *= std::polar(inv_m, -2.0 * kPi * f * tau);
    }
    fft::inverse(buf);

    for (std::size_t k = 0; k < m; ++k) {
        const double t = tx.t_start() + static_cast<double>(k) / fs;
        buf[k] *= std::polar(target.amplitude, 2.0 * kPi * fd * (t - tau) + target.phase);
    }
    return {std::move(buf), fs, tx.t_start()};
}

std::vector<cdouble> rician_taps(const RicianChannel& ch, std::size_t count) {
    if (!(ch.k_factor >= 0.0)) throw ParameterError("Rician K must be >= 0");
    std::mt19937_64 rng(derive_seed(ch.seed, 0));
    std::uniform_real_distribution<double> uni(0.0, 2.0 * kPi);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double k = ch.k_factor;
    const double los_amp = std::isinf(k) ? 1.0 : std::sqrt(k / (k + 1.0));
    const double scatter_std = std::isinf(k) ? 0.0 : std::sqrt(0.5 / (k + 1.0));
    const cdouble los = std::polar(los_amp, uni(rng));
    std::vector<cdouble> taps(count);
    for (auto& tap : taps) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        tap = los + scatter_std * cdouble{re, im};
    }
    return taps;
}

ComplexSignal apply_rician(const ComplexSignal& sig, const RicianChannel& ch,
                           std::size_t block_samples) {
    if (block_samples == 0) throw ParameterError("fading block length must be > 0");
    const std::size_t blocks = (sig.size() + block_samples - 1) / block_samples;
    const std::vector<cdouble> taps = rician_taps(ch, blocks);
    std::vector<cdouble> out(sig.samples().begin(), sig.samples().end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= taps[i / block_samples];
    return {std::move(out), sig.fs(), sig.t_start()};
}

double noise_variance(double signal_power, double snr_db, const AwgnOptions& opts) {
    if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity()) {
        throw ParameterError("SNR must be finite or +inf");
    }
    if (std::isinf(snr_db)) return 0.0;
    double var = signal_power / std::pow(10.0, snr_db / 10.0);
    if (opts.reference == SnrReference::PerSymbol) {
        if (opts.symbol_samples == 0) {
            throw ParameterError("per-symbol SNR needs the symbol length in samples");
        }
        var *= static_cast<double>(opts.symbol_samples);
    }
    return var;
}

ComplexSignal add_awgn(const ComplexSignal& sig, double snr_db, std::uint64_t seed,
                       const AwgnOptions& opts) {
    const double power = opts.reference_power.value_or(sig.mean_power());
    const double var = noise_variance(power, snr_db, opts);
    if (var == 0.0) return sig;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5 * var));
    std::vector<cdouble> out(sig.samples().begin(), sig.samples().end());
    for (auto& v : out) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        v += cdouble{re, im};
    }
    return {std::move(out), sig.fs(), sig.t_start()};
}

DebrisTarget sample_scenario(const ScenarioDistribution& dist, std::uint64_t index,
                             const WaveformParams* params) {
    dist.validate();
    std::mt19937_64 rng(derive_seed(dist.seed, index));
    std::normal_distribution<double> range(dist.range_mean_m, dist.range_std_m);
    std::normal_distribution<double> vel(dist.velocity_mean_mps, dist.velocity_std_mps);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    for (;;) {
        DebrisTarget t;
        t.range_m = range(rng);
        t.velocity_mps = vel(rng);
        t.amplitude = 1.0;
        t.phase = phase(rng);
        if (!(t.range_m > 0.0 && t.range_m <= kMaxRangeM)) continue;
        if (!(t.velocity_mps > 0.0 && t.velocity_mps <= kMaxSpeedMps)) continue;
        if (params != nullptr) {
            if (t.delay() >= params->t_half) continue;
            if (!(t.doppler(*params) > params->mu() * t.delay())) continue;
        }
        return t;
    }
}

}  // namespace chirpjrc

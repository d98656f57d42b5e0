// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "chirpjrc/signal.hpp"

namespace chirpjrc {

/// Chirp and sampling parameters shared by every block.
///
/// A symbol spans (-T, T) with T = t_half, so each half carries one chirp of
/// slope mu = delta_f / t_half. The slope and the wavelength are derived on
/// demand and never stored.
struct WaveformParams {
    double f0 = 340e9;        ///< carrier frequency (Hz)
    double delta_f = 288e6;   ///< sweep bandwidth per chirp (Hz)
    double t_half = 300e-6;   ///< chirp duration T (s)
    double fs = 360e6;        ///< complex baseband sample rate (Hz)

    [[nodiscard]] double mu() const noexcept { return delta_f / t_half; }
    [[nodiscard]] double lambda() const noexcept { return kSpeedOfLight / f0; }
    /// Samples in one chirp (half a symbol).
    [[nodiscard]] std::size_t samples_per_half() const;
    [[nodiscard]] std::size_t samples_per_symbol() const { return 2 * samples_per_half(); }

    /// Throws ParameterError naming the first violated invariant.
    void validate() const;

    /// Full-scale constants: 340 GHz carrier, 288 MHz sweep, 300 us chirp, 360 MHz sampling.
    [[nodiscard]] static WaveformParams paper();
    /// Same slope at one tenth of the bandwidth and duration, for fast runs.
    [[nodiscard]] static WaveformParams desk();
    /// Look up "paper" or "desk"; throws ParameterError otherwise.
    [[nodiscard]] static WaveformParams preset(std::string_view name);
};

enum class ChirpDirection { Down = 0, Up = 1 };

/// Bit 1 is carried by TriangleLFM (up then down), bit 0 by VLFM (down then up).
enum class SymbolShape { VLFM = 0, TriangleLFM = 1 };

[[nodiscard]] constexpr SymbolShape shape_for_bit(std::uint8_t bit) noexcept {
    return bit != 0 ? SymbolShape::TriangleLFM : SymbolShape::VLFM;
}
[[nodiscard]] constexpr std::uint8_t bit_for_shape(SymbolShape s) noexcept {
    return s == SymbolShape::TriangleLFM ? 1 : 0;
}

/// Single chirp x[n] = A exp(+-j pi mu t_n^2), t_n = n / fs over [0, duration),
/// scaled to unit energy (sum |x|^2 / fs = 1).
[[nodiscard]] ComplexSignal gen_chirp(const WaveformParams& params, ChirpDirection dir,
                                      double duration);

/// One unit-energy symbol on t_n = -T + n / fs, n in [0, 2 * samples_per_half).
///
/// TriangleLFM is exp(+j pi mu t^2) for t < 0 and exp(-j pi mu t^2) for t >= 0;
/// VLFM is its complex conjugate. Both halves have zero phase at t = 0.
[[nodiscard]] ComplexSignal gen_symbol(const WaveformParams& params, SymbolShape shape);

/// Continuous-time complex envelope of a unit-energy symbol (zero outside [-T, T)).
[[nodiscard]] cdouble symbol_envelope(const WaveformParams& params, SymbolShape shape, double t);

/// Concatenated symbols for a bit stream, starting at t = -T.
[[nodiscard]] ComplexSignal modulate_bits(const WaveformParams& params,
                                          std::span<const std::uint8_t> bits);

/// Instantaneous frequency (Hz) from successive phase differences.
///
/// Differences are wrapped to (-fs/2, fs/2] and then made continuous across
/// alias boundaries, so a sweep wider than the sample rate still reads as a
/// ramp. The whole track is finally shifted by a multiple of fs so its mean
/// lies in (-fs/2, fs/2]. Output length is size() - 1.
[[nodiscard]] std::vector<double> instantaneous_frequency(const ComplexSignal& sig);

/// FMCW baseline frame: two consecutive identical up-ramps covering the same
/// band as the up half of a TriangleLFM symbol, unit total energy, t_start = -T.
[[nodiscard]] ComplexSignal gen_fmcw_frame(const WaveformParams& params);

/// Baseline communications pulse: one chirp of duration T sweeping
/// [-delta_f/2, delta_f/2] (Up) or the reverse (Down) at sample rate 2 * fs,
/// unit energy, t_start = 0.
[[nodiscard]] ComplexSignal gen_lfm_pulse(const WaveformParams& params, ChirpDirection dir);

/// Baseline stream: one LFM pulse per bit (Up = 1, Down = 0).
[[nodiscard]] ComplexSignal modulate_bits_lfm(const WaveformParams& params,
                                              std::span<const std::uint8_t> bits);

}  // namespace chirpjrc

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#pragma once

#include <cstddef>

#include "chirpjrc/channel.hpp"
#include "chirpjrc/signal.hpp"
#include "chirpjrc/waveform.hpp"

namespace chirpjrc {

/// Receiver knobs. Scenario bounds set the expected beat bands and the amount
/// of each segment discarded at its leading edge.
struct ReceiverConfig {
    std::size_t decimation = 1;
    std::size_t max_subarray = 64;
    double edge_trim_fraction = 0.02;
    double max_range_m = kMaxRangeM;
    double max_speed_mps = kMaxSpeedMps;
    /// Reject estimates outside the Doppler-dominant regime (fd > mu * tau).
    bool enforce_regime = true;

    /// Largest decimation keeping the output rate above twice the maximum
    /// Doppler shift (5 for the full-scale preset, 1 for the desk preset).
    [[nodiscard]] static ReceiverConfig defaults_for(const WaveformParams& params);
    void validate(const WaveformParams& params) const;
};

struct BeatPair {
    double f_up = 0.0;    ///< |beat| of the up-chirp segment (Hz)
    double f_down = 0.0;  ///< |beat| of the down-chirp segment (Hz)
};

struct RootMusicResult {
    double frequency_hz = 0.0;
    double root_modulus = 0.0;
    std::size_t subarray = 0;
    std::size_t snapshots = 0;
};

struct SegmentDiagnostics {
    double signed_beat_hz = 0.0;  ///< rx * conj(ref) tone frequency
    RootMusicResult music;
    std::size_t samples = 0;      ///< samples handed to root-MUSIC
    cdouble amplitude{};          ///< complex tone amplitude at the segment origin
};

struct EstimationResult {
    BeatPair beat;
    double range_m = 0.0;
    double velocity_mps = 0.0;
    SegmentDiagnostics first;   ///< first half of the symbol / first FMCW ramp
    SegmentDiagnostics second;  ///< second half / second ramp
};

/// out[n] = rx[n] * conj(ref[n]). Inputs must share fs and length.
[[nodiscard]] ComplexSignal dechirp(const ComplexSignal& rx, const ComplexSignal& ref);

/// Kaiser-windowed low-pass (cutoff at the output Nyquist) followed by keeping
/// every factor-th sample; only fully-overlapped outputs are kept. factor 1 is
/// the identity. Throws ParameterError if max_tone_hz is not below the output
/// Nyquist frequency.
[[nodiscard]] ComplexSignal decimate(const ComplexSignal& sig, std::size_t factor,
                                     double max_tone_hz);

/// Root-MUSIC on the forward-backward smoothed covariance of one snapshot.
/// subarray = 0 selects min(64, N/3). Returns the strongest of the
/// `model_order` roots nearest the unit circle (from inside), f = arg(z) fs / 2pi.
/// Throws EstimationError when the covariance has rank below model_order.
[[nodiscard]] RootMusicResult root_music(const ComplexSignal& sig, std::size_t model_order,
                                         std::size_t subarray = 0);

[[nodiscard]] inline double estimate_tone_rootmusic(const ComplexSignal& sig,
                                                    std::size_t model_order) {
    return root_music(sig, model_order).frequency_hz;
}

/// Triangle/V symbol estimator: dechirp each half against its reference,
/// estimate both beats and solve fd = (b_up + b_down) / 2, mu tau = (b_down - b_up) / 2.
/// The first 2 * samples_per_half samples of rx are used.
[[nodiscard]] EstimationResult estimate_target(const ComplexSignal& rx, SymbolShape tx_shape,
                                               const WaveformParams& params,
                                               const ReceiverConfig& cfg);

/// Single-slope FMCW baseline on gen_fmcw_frame: the beat of each ramp is
/// attributed entirely to delay, and velocity comes from the tone phase
/// advance between the two ramps, resolved against the beat.
[[nodiscard]] EstimationResult estimate_target_fmcw(const ComplexSignal& rx,
                                                    const WaveformParams& params,
                                                    const ReceiverConfig& cfg);

}  // namespace chirpjrc

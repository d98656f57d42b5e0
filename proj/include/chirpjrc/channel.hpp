// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "chirpjrc/signal.hpp"
#include "chirpjrc/waveform.hpp"

namespace chirpjrc {

/// Scenario bounds for a detectable piece of debris.
inline constexpr double kMaxRangeM = 500.0;
inline constexpr double kMaxSpeedMps = 15'000.0;

/// Point scatterer. Positive velocity means approaching.
struct DebrisTarget {
    double range_m = 250.0;
    double velocity_mps = 10'000.0;
    double amplitude = 1.0;
    double phase = 0.0;

    [[nodiscard]] double delay() const noexcept { return 2.0 * range_m / kSpeedOfLight; }
    [[nodiscard]] double doppler(const WaveformParams& p) const noexcept {
        return 2.0 * velocity_mps / p.lambda();
    }
    /// Throws ParameterError (BlindSpotError for tau >= T).
    void validate(const WaveformParams& p) const;
};

/// Truncated Gaussian laws for range and velocity.
struct ScenarioDistribution {
    double range_mean_m = 250.0;
    double range_std_m = 70.0;
    double velocity_mean_mps = 10'000.0;
    double velocity_std_mps = 2'000.0;
    std::uint64_t seed = 1;

    void validate() const;
};

/// Block-fading Rician tap: LOS part sqrt(K/(K+1)) e^{j theta} plus scattered
/// CN(0, 1/(K+1)). theta is fixed per channel (drawn from the seed).
struct RicianChannel {
    double k_factor = 10.0;
    std::uint64_t seed = 1;
};

enum class SnrReference {
    PerSample,  ///< noise variance = signal power / 10^(snr/10)
    PerSymbol,  ///< SNR on the integrated symbol energy (Eb/N0 for unit-energy symbols)
};

struct AwgnOptions {
    SnrReference reference = SnrReference::PerSample;
    /// Samples per symbol, required for PerSymbol.
    std::size_t symbol_samples = 0;
    /// Mean per-sample signal power to reference the SNR to; measured from the
    /// input when absent. Supplying the transmit power keeps the noise level
    /// independent of fading.
    std::optional<double> reference_power;
};

/// Deterministic 64-bit mixing of a master seed with a stream index (splitmix64).
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Monostatic echo A_r x(t - tau) e^{j 2 pi fd (t - tau)} e^{j phi}, with
/// tau = 2R/c and fd = 2V/lambda.
///
/// The delay is a frequency-domain phase ramp on a 2x zero-padded block whose
/// bins are mapped onto the band centred on the signal's spectral centroid,
/// so chirps that wrap the complex Nyquist band are delayed correctly. The
/// whole padded block is returned (length 2 * tx.size(), same t_start), which
/// keeps the operation exactly energy-preserving.
[[nodiscard]] ComplexSignal echo(const ComplexSignal& tx, const DebrisTarget& target,
                                 const WaveformParams& params);

/// `count` independent taps from the channel's stream.
[[nodiscard]] std::vector<cdouble> rician_taps(const RicianChannel& ch, std::size_t count);

/// Multiply each consecutive block of `block_samples` by its own tap.
[[nodiscard]] ComplexSignal apply_rician(const ComplexSignal& sig, const RicianChannel& ch,
                                         std::size_t block_samples);

/// Circular complex white Gaussian noise at the requested SNR. snr_db = +inf
/// returns the input unchanged.
[[nodiscard]] ComplexSignal add_awgn(const ComplexSignal& sig, double snr_db, std::uint64_t seed,
                                     const AwgnOptions& opts = {});

/// Per-sample complex noise variance implied by add_awgn for these inputs.
[[nodiscard]] double noise_variance(double signal_power, double snr_db, const AwgnOptions& opts);

/// Draw stream element `index` of the scenario distribution. Draws are rejected
/// until they satisfy the target bounds and, when `params` is given, the
/// Doppler-dominant beat regime fd > mu * tau.
[[nodiscard]] DebrisTarget sample_scenario(const ScenarioDistribution& dist, std::uint64_t index,
                                           const WaveformParams* params = nullptr);

}  // namespace chirpjrc

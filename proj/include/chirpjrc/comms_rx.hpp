// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "chirpjrc/signal.hpp"
#include "chirpjrc/waveform.hpp"

namespace chirpjrc {

struct DecisionStatistics {
    double branch_tri = 0.0;  ///< statistic of the bit-1 reference (TriangleLFM or up pulse)
    double branch_v = 0.0;    ///< statistic of the bit-0 reference (VLFM or down pulse)
    std::uint8_t decided_bit = 0;
};

enum class CommsScheme { Proposed, LfmMf };

[[nodiscard]] std::string_view scheme_name(CommsScheme s) noexcept;
/// "proposed" or "lfm_mf"; throws ParameterError otherwise.
[[nodiscard]] CommsScheme parse_scheme(std::string_view name);

/// Samples per bit for the scheme (both are 2 * samples_per_half).
[[nodiscard]] std::size_t samples_per_bit(CommsScheme s, const WaveformParams& params);

/// Two-branch dechirp-and-integrate receiver: each branch is
/// |sum rx[n] conj(ref[n])| / fs against a unit-energy reference symbol.
/// Ties decide 1.
[[nodiscard]] DecisionStatistics demodulate_symbol(const ComplexSignal& rx,
                                                   const WaveformParams& params);

/// Matched-filter baseline: peak magnitude of the full linear cross-correlation
/// of rx with the up- and down-pulse templates (sample rate 2 * fs).
[[nodiscard]] DecisionStatistics demodulate_symbol_lfm_mf(const ComplexSignal& rx,
                                                          const WaveformParams& params);

/// Reference templates and their spectra built once for repeated decisions.
class Demodulator {
public:
    Demodulator(const WaveformParams& params, CommsScheme scheme);

    [[nodiscard]] CommsScheme scheme() const noexcept { return scheme_; }
    [[nodiscard]] std::size_t symbol_samples() const noexcept { return n_; }
    [[nodiscard]] double sample_rate() const noexcept { return fs_; }

    /// rx holds exactly symbol_samples() samples.
    [[nodiscard]] DecisionStatistics decide(std::span<const cdouble> rx) const;

private:
    CommsScheme scheme_;
    std::size_t n_ = 0;
    double fs_ = 0.0;
    std::vector<cdouble> one_;   // bit-1 reference (time domain or spectrum)
    std::vector<cdouble> zero_;  // bit-0 reference
};

/// Slice rx into n_bits symbols and decide each one.
[[nodiscard]] std::vector<std::uint8_t> demodulate_stream(const ComplexSignal& rx,
                                                          std::size_t n_bits, CommsScheme scheme,
                                                          const WaveformParams& params,
                                                          std::vector<DecisionStatistics>* stats = nullptr);

}  // namespace chirpjrc

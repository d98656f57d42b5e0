// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "chirpjrc/channel.hpp"
#include "chirpjrc/harness.hpp"
#include "chirpjrc/radar_rx.hpp"
#include "chirpjrc/waveform.hpp"

namespace chirpjrc {

/// Everything a run needs. Loaded from JSON, every key optional:
///
///   preset        "paper" | "desk"
///   waveform      {f0_hz, delta_f_hz, t_half_s, fs_hz}         overrides the preset
///   scenario      {range_mean_m, range_std_m, velocity_mean_mps, velocity_std_mps}
///   channel       {k_factor}
///   receiver      {decimation, max_subarray, edge_trim_fraction, max_range_m, max_speed_mps}
///   radar_sweep   {snr_db: [..], trials, record_trials}
///   ber_sweep     {snr_db: [..], bits, block_bits, record_trials}
///   seed, threads, out, command
///
/// SNR entries are numbers or the string "inf". Unknown keys are errors.
struct RunConfig {
    std::string preset = "desk";
    WaveformParams waveform = WaveformParams::desk();
    ScenarioDistribution scenario;
    double k_factor = 10.0;
    ReceiverConfig receiver = ReceiverConfig::defaults_for(WaveformParams::desk());

    std::vector<double> radar_snr_db;
    std::size_t radar_trials = 500;
    bool radar_record_trials = false;

    std::vector<double> ber_snr_db;
    std::size_t ber_bits = 20'000;
    std::size_t ber_block_bits = 1'000;
    bool ber_record_trials = false;

    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string out = "out";
    std::string command;  ///< informational; set in manifests

    RunConfig();

    /// Throws ParameterError naming the first violated invariant.
    void validate() const;

    [[nodiscard]] RadarSweepConfig radar_sweep() const;
    [[nodiscard]] BerSweepConfig ber_sweep() const;
};

/// Values given on the command line; each one overrides the file.
struct ConfigOverrides {
    std::optional<std::string> preset;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    std::optional<std::string> out;
};

/// Parse JSON text. Throws ConfigError on syntax, type or unknown-key errors.
[[nodiscard]] RunConfig parse_config(const std::string& text);
[[nodiscard]] RunConfig load_config(const std::filesystem::path& path);

/// Defaults, then the optional file, then overrides; validated. A preset
/// override discards the file's preset and waveform block.
[[nodiscard]] RunConfig resolve_config(const std::optional<std::filesystem::path>& file,
                                       const ConfigOverrides& overrides);

/// Fully explicit JSON form; parse_config(to_json_text(c)) reproduces c.
[[nodiscard]] std::string to_json_text(const RunConfig& c);

}  // namespace chirpjrc

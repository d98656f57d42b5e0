// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "chirpjrc/channel.hpp"
#include "chirpjrc/comms_rx.hpp"
#include "chirpjrc/radar_rx.hpp"
#include "chirpjrc/waveform.hpp"

namespace chirpjrc {

struct Accuracy {
    double pct_r = 0.0;
    double pct_v = 0.0;
};

/// %R = 100 - |R - R_hat| / R * 100, %V likewise. Not clipped.
[[nodiscard]] Accuracy accuracy_metrics(double range_m, double velocity_mps, double range_est_m,
                                        double velocity_est_mps);

enum class RadarScheme { Proposed, Fmcw };
[[nodiscard]] std::string_view scheme_name(RadarScheme s) noexcept;

struct RadarSweepConfig {
    WaveformParams params = WaveformParams::desk();
    ReceiverConfig receiver = ReceiverConfig::defaults_for(WaveformParams::desk());
    ScenarioDistribution scenario;  ///< seed is ignored; trial seeds come from master_seed
    std::vector<double> snr_db;     ///< per-sample SNR on the received window; +inf allowed
    std::size_t trials = 500;
    std::uint64_t master_seed = 1;
    unsigned threads = 0;  ///< 0 = hardware concurrency
    bool keep_records = false;

    void validate() const;
};

struct BerSweepConfig {
    WaveformParams params = WaveformParams::desk();
    double k_factor = 10.0;
    std::vector<double> snr_db;  ///< Eb/N0; +inf allowed
    std::size_t bits = 20'000;
    std::size_t block_bits = 1'000;  ///< bits per seeded trial
    std::uint64_t master_seed = 1;
    unsigned threads = 0;
    bool keep_records = false;

    void validate() const;
};

struct RadarTrialRecord {
    std::size_t trial_id = 0;
    std::uint64_t seed = 0;
    double snr_db = 0.0;
    RadarScheme scheme = RadarScheme::Proposed;
    double range_m = 0.0;
    double velocity_mps = 0.0;
    double range_est_m = 0.0;
    double velocity_est_mps = 0.0;
    bool failed = false;
    Accuracy accuracy;  ///< zero on failure
};

struct BerTrialRecord {
    std::size_t trial_id = 0;
    std::uint64_t seed = 0;
    double snr_db = 0.0;
    CommsScheme scheme = CommsScheme::Proposed;
    std::size_t bits = 0;
    std::size_t errors = 0;
};

struct RadarPoint {
    double snr_db = 0.0;
    RadarScheme scheme = RadarScheme::Proposed;
    std::size_t trials = 0;
    double mean_pct_r = 0.0;
    double mean_pct_v = 0.0;
    std::size_t fail_count = 0;
};

struct BerPoint {
    double snr_db = 0.0;
    CommsScheme scheme = CommsScheme::Proposed;
    std::size_t bits = 0;
    std::size_t errors = 0;
    double ber = 0.0;
    double ci95_halfwidth = 0.0;
};

/// Points ordered by (snr index, scheme); records by (snr index, trial, scheme).
struct RadarSweepResult {
    std::vector<RadarPoint> points;
    std::vector<RadarTrialRecord> records;
};

struct BerSweepResult {
    std::vector<BerPoint> points;
    std::vector<BerTrialRecord> records;
};

struct WilsonInterval {
    double lower = 0.0;
    double upper = 0.0;
    double halfwidth = 0.0;
};

/// 95% Wilson score interval for `errors` out of `n`.
[[nodiscard]] WilsonInterval wilson_interval(std::size_t errors, std::size_t n);

/// Run fn(i) for i in [0, count) on up to `threads` workers. The first
/// exception thrown is rethrown after all workers stop.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

/// Worker count from an explicit request, else CHIRPJRC_THREADS, else hardware.
[[nodiscard]] unsigned resolve_threads(unsigned requested);

[[nodiscard]] RadarSweepResult run_radar_sweep(const RadarSweepConfig& cfg);
[[nodiscard]] BerSweepResult run_ber_sweep(const BerSweepConfig& cfg);

/// Seed of trial `trial_id` under a master seed.
[[nodiscard]] std::uint64_t trial_seed(std::uint64_t master, std::size_t trial_id) noexcept;

/// Re-execute one radar trial (both schemes) from its recorded seed. The
/// returned records carry trial_id 0.
[[nodiscard]] std::vector<RadarTrialRecord> replay_radar_trial(const RadarSweepConfig& cfg,
                                                               std::uint64_t seed, double snr_db);
/// Re-execute one BER block of `bits` bits (both schemes) from its recorded
/// seed. The returned records carry trial_id 0.
[[nodiscard]] std::vector<BerTrialRecord> replay_ber_trial(const BerSweepConfig& cfg,
                                                           std::uint64_t seed, std::size_t bits,
                                                           double snr_db);

/// "inf" for +inf, shortest round-trip decimal otherwise.
[[nodiscard]] std::string format_snr(double snr_db);

void write_radar_csv(std::ostream& os, const RadarSweepResult& r);
void write_ber_csv(std::ostream& os, const BerSweepResult& r);
void write_radar_records_csv(std::ostream& os, const RadarSweepResult& r);
void write_ber_records_csv(std::ostream& os, const BerSweepResult& r);

}  // namespace chirpjrc

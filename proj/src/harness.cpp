// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#include "chirpjrc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <random>
#include <thread>

#include "chirpjrc/error.hpp"

namespace chirpjrc {

namespace {

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

void validate_snr_axis(const std::vector<double>& snr) {
    if (snr.empty()) throw ParameterError("SNR grid must be nonempty");
    for (double s : snr) {
        if (std::isnan(s) || s == -std::numeric_limits<double>::infinity()) {
            throw ParameterError("SNR values must be finite or +inf");
        }
    }
}

struct RadarReferences {
    ComplexSignal triangle;
    ComplexSignal vlfm;
    ComplexSignal fmcw;
};

RadarReferences radar_references(const WaveformParams& p) {
    return {gen_symbol(p, SymbolShape::TriangleLFM), gen_symbol(p, SymbolShape::VLFM),
            gen_fmcw_frame(p)};
}

// Both schemes of one trial across the SNR axis, on shared target and noise draws.
std::vector<RadarTrialRecord> radar_trial(const RadarSweepConfig& cfg, const RadarReferences& refs,
                                          std::size_t trial_id, std::uint64_t seed,
                                          std::span<const double> snr_axis) {
    const WaveformParams& p = cfg.params;
    ScenarioDistribution dist = cfg.scenario;
    dist.seed = seed;
    const DebrisTarget target = sample_scenario(dist, 0, &p);
    const std::uint64_t noise_seed = derive_seed(seed, 1);
    const SymbolShape shape = shape_for_bit(static_cast<std::uint8_t>(derive_seed(seed, 2) & 1U));
    const std::size_t n = p.samples_per_symbol();

    const ComplexSignal& tx = shape == SymbolShape::TriangleLFM ? refs.triangle : refs.vlfm;
    const ComplexSignal rx_prop = echo(tx, target, p).slice(0, n);
    const ComplexSignal rx_fmcw = echo(refs.fmcw, target, p).slice(0, n);

    std::vector<RadarTrialRecord> out;
    out.reserve(2 * snr_axis.size());
    for (double snr : snr_axis) {
        for (RadarScheme scheme : {RadarScheme::Proposed, RadarScheme::Fmcw}) {
            RadarTrialRecord rec;
            rec.trial_id = trial_id;
            rec.seed = seed;
            rec.snr_db = snr;
            rec.scheme = scheme;
            rec.range_m = target.range_m;
            rec.velocity_mps = target.velocity_mps;
            const ComplexSignal& clean = scheme == RadarScheme::Proposed ? rx_prop : rx_fmcw;
            const ComplexSignal rx = add_awgn(clean, snr, noise_seed);
            try {
                const EstimationResult est = scheme == RadarScheme::Proposed
                                                 ? estimate_target(rx, shape, p, cfg.receiver)
                                                 : estimate_target_fmcw(rx, p, cfg.receiver);
                rec.range_est_m = est.range_m;
                rec.velocity_est_mps = est.velocity_mps;
                rec.accuracy = accuracy_metrics(target.range_m, target.velocity_mps, est.range_m,
                                                est.velocity_mps);
            } catch (const EstimationError&) {
                rec.failed = true;
                rec.range_est_m = std::numeric_limits<double>::quiet_NaN();
                rec.velocity_est_mps = std::numeric_limits<double>::quiet_NaN();
            }
            out.push_back(rec);
        }
    }
    return out;
}

struct BerBlock {
    std::vector<std::uint8_t> bits;
    ComplexSignal rx_prop;
    ComplexSignal rx_lfm;
};

std::vector<BerTrialRecord> ber_trial(const BerSweepConfig& cfg, const Demodulator& prop,
                                      const Demodulator& lfm, std::size_t trial_id,
                                      std::uint64_t seed, std::size_t n_bits,
                                      std::span<const double> snr_axis) {
    const WaveformParams& p = cfg.params;
    std::vector<std::uint8_t> bits(n_bits);
    std::mt19937_64 rng(derive_seed(seed, 0));
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng() >> 63);
    const RicianChannel ch{cfg.k_factor, derive_seed(seed, 1)};
    const std::uint64_t noise_seed = derive_seed(seed, 2);

    const ComplexSignal tx_prop = modulate_bits(p, bits);
    const ComplexSignal tx_lfm = modulate_bits_lfm(p, bits);
    const ComplexSignal faded_prop = apply_rician(tx_prop, ch, prop.symbol_samples());
    const ComplexSignal faded_lfm = apply_rician(tx_lfm, ch, lfm.symbol_samples());

    std::vector<BerTrialRecord> out;
    out.reserve(2 * snr_axis.size());
    for (double snr : snr_axis) {
        for (const Demodulator* d : {&prop, &lfm}) {
            const ComplexSignal& tx = d == &prop ? tx_prop : tx_lfm;
            const ComplexSignal& faded = d == &prop ? faded_prop : faded_lfm;
            AwgnOptions opts;
            opts.reference = SnrReference::PerSymbol;
            opts.symbol_samples = d->symbol_samples();
            opts.reference_power = tx.mean_power();
            const ComplexSignal rx = add_awgn(faded, snr, noise_seed, opts);
            BerTrialRecord rec;
            rec.trial_id = trial_id;
            rec.seed = seed;
            rec.snr_db = snr;
            rec.scheme = d->scheme();
            rec.bits = n_bits;
            const std::size_t ns = d->symbol_samples();
            for (std::size_t i = 0; i < n_bits; ++i) {
                if (d->decide(rx.samples().subspan(i * ns, ns)).decided_bit != bits[i]) ++rec.errors;
            }
            out.push_back(rec);
        }
    }
    return out;
}

}  // namespace

Accuracy accuracy_metrics(double range_m, double velocity_mps, double range_est_m,
                          double velocity_est_mps) {
    if (range_m == 0.0 || velocity_mps == 0.0) throw ParameterError("accuracy needs nonzero truth");
    return {100.0 - std::abs(range_m - range_est_m) / std::abs(range_m) * 100.0,
            100.0 - std::abs(velocity_mps - velocity_est_mps) / std::abs(velocity_mps) * 100.0};
}

std::string_view scheme_name(RadarScheme s) noexcept {
    return s == RadarScheme::Proposed ? "proposed" : "fmcw";
}

void RadarSweepConfig::validate() const {
    params.validate();
    receiver.validate(params);
    scenario.validate();
    validate_snr_axis(snr_db);
    if (trials == 0) throw ParameterError("radar sweep needs at least one trial");
}

void BerSweepConfig::validate() const {
    params.validate();
    validate_snr_axis(snr_db);
    if (bits == 0) throw ParameterError("BER sweep needs at least one bit");
    if (block_bits == 0) throw ParameterError("BER block size must be >= 1");
    if (!(k_factor >= 0.0)) throw ParameterError("Rician K must be >= 0");
}

WilsonInterval wilson_interval(std::size_t errors, std::size_t n) {
    if (n == 0) throw ParameterError("Wilson interval needs n > 0");
    if (errors > n) throw ParameterError("more errors than trials");
    constexpr double z = 1.959963984540054;
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(errors) / nn;
    const double denom = 1.0 + z * z / nn;
    const double center = (p + z * z / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half), half};
}

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CHIRPJRC_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count || stop.load()) return;
            try {
                fn(i);
            } catch (...) {
                const std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                stop.store(true);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t trial_id) noexcept {
    return derive_seed(master, trial_id);
}

RadarSweepResult run_radar_sweep(const RadarSweepConfig& cfg) {
    cfg.validate();
    const RadarReferences refs = radar_references(cfg.params);
    std::vector<std::vector<RadarTrialRecord>> per_trial(cfg.trials);
    parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
        per_trial[t] = radar_trial(cfg, refs, t, trial_seed(cfg.master_seed, t), cfg.snr_db);
    });

    RadarSweepResult res;
    const std::size_t ns = cfg.snr_db.size();
    for (std::size_t k = 0; k < ns; ++k) {
        for (std::size_t s = 0; s < 2; ++s) {
            RadarPoint pt;
            pt.snr_db = cfg.snr_db[k];
            pt.scheme = s == 0 ? RadarScheme::Proposed : RadarScheme::Fmcw;
            pt.trials = cfg.trials;
            for (std::size_t t = 0; t < cfg.trials; ++t) {
                const RadarTrialRecord& rec = per_trial[t][2 * k + s];
                pt.mean_pct_r += rec.accuracy.pct_r;
                pt.mean_pct_v += rec.accuracy.pct_v;
                if (rec.failed) ++pt.fail_count;
            }
            pt.mean_pct_r /= static_cast<double>(cfg.trials);
            pt.mean_pct_v /= static_cast<double>(cfg.trials);
            res.points.push_back(pt);
        }
    }
    if (cfg.keep_records) {
        for (std::size_t k = 0; k < ns; ++k) {
            for (std::size_t t = 0; t < cfg.trials; ++t) {
                res.records.push_back(per_trial[t][2 * k]);
                res.records.push_back(per_trial[t][2 * k + 1]);
            }
        }
    }
    return res;
}

BerSweepResult run_ber_sweep(const BerSweepConfig& cfg) {
    cfg.validate();
    const Demodulator prop(cfg.params, CommsScheme::Proposed);
    const Demodulator lfm(cfg.params, CommsScheme::LfmMf);
    const std::size_t blocks = (cfg.bits + cfg.block_bits - 1) / cfg.block_bits;
    std::vector<std::vector<BerTrialRecord>> per_block(blocks);
    parallel_for(blocks, cfg.threads, [&](std::size_t b) {
        const std::size_t n = std::min(cfg.block_bits, cfg.bits - b * cfg.block_bits);
        per_block[b] = ber_trial(cfg, prop, lfm, b, trial_seed(cfg.master_seed, b), n, cfg.snr_db);
    });

    BerSweepResult res;
    for (std::size_t k = 0; k < cfg.snr_db.size(); ++k) {
        for (std::size_t s = 0; s < 2; ++s) {
            BerPoint pt;
            pt.snr_db = cfg.snr_db[k];
            pt.scheme = s == 0 ? CommsScheme::Proposed : CommsScheme::LfmMf;
            for (std::size_t b = 0; b < blocks; ++b) {
                const BerTrialRecord& rec = per_block[b][2 * k + s];
                pt.bits += rec.bits;
                pt.errors += rec.errors;
            }
            pt.ber = static_cast<double>(pt.errors) / static_cast<double>(pt.bits);
            pt.ci95_halfwidth = wilson_interval(pt.errors, pt.bits).halfwidth;
            res.points.push_back(pt);
        }
        if (cfg.keep_records) {
            for (std::size_t b = 0; b < blocks; ++b) {
                res.records.push_back(per_block[b][2 * k]);
                res.records.push_back(per_block[b][2 * k + 1]);
            }
        }
    }
    return res;
}

std::vector<RadarTrialRecord> replay_radar_trial(const RadarSweepConfig& cfg, std::uint64_t seed,
                                                 double snr_db) {
    cfg.validate();
    const RadarReferences refs = radar_references(cfg.params);
    const double axis[] = {snr_db};
    return radar_trial(cfg, refs, 0, seed, axis);
}

std::vector<BerTrialRecord> replay_ber_trial(const BerSweepConfig& cfg, std::uint64_t seed,
                                             std::size_t bits, double snr_db) {
    cfg.validate();
    if (bits == 0) throw ParameterError("replay needs at least one bit");
    const Demodulator prop(cfg.params, CommsScheme::Proposed);
    const Demodulator lfm(cfg.params, CommsScheme::LfmMf);
    const double axis[] = {snr_db};
    return ber_trial(cfg, prop, lfm, 0, seed, bits, axis);
}

std::string format_snr(double snr_db) { return fmt(snr_db); }

void write_radar_csv(std::ostream& os, const RadarSweepResult& r) {
    os << "snr_db,scheme,trials,mean_pct_r,mean_pct_v,fail_count\n";
    for (const RadarPoint& p : r.points) {
        os << fmt(p.snr_db) << ',' << scheme_name(p.scheme) << ',' << p.trials << ','
           << fmt(p.mean_pct_r) << ',' << fmt(p.mean_pct_v) << ',' << p.fail_count << '\n';
    }
}

void write_ber_csv(std::ostream& os, const BerSweepResult& r) {
    os << "snr_db,scheme,bits,errors,ber,ci95_halfwidth\n";
    for (const BerPoint& p : r.points) {
        os << fmt(p.snr_db) << ',' << scheme_name(p.scheme) << ',' << p.bits << ',' << p.errors
           << ',' << fmt(p.ber) << ',' << fmt(p.ci95_halfwidth) << '\n';
    }
}

void write_radar_records_csv(std::ostream& os, const RadarSweepResult& r) {
    os << "trial_id,seed,snr_db,scheme,range_m,velocity_mps,range_est_m,velocity_est_mps,failed,"
          "pct_r,pct_v\n";
    for (const RadarTrialRecord& t : r.records) {
        os << t.trial_id << ',' << t.seed << ',' << fmt(t.snr_db) << ',' << scheme_name(t.scheme)
           << ',' << fmt(t.range_m) << ',' << fmt(t.velocity_mps) << ',' << fmt(t.range_est_m)
           << ',' << fmt(t.velocity_est_mps) << ',' << (t.failed ? 1 : 0) << ','
           << fmt(t.accuracy.pct_r) << ',' << fmt(t.accuracy.pct_v) << '\n';
    }
}

void write_ber_records_csv(std::ostream& os, const BerSweepResult& r) {
    os << "trial_id,seed,snr_db,scheme,bits,errors\n";
    for (const BerTrialRecord& t : r.records) {
        os << t.trial_id << ',' << t.seed << ',' << fmt(t.snr_db) << ',' << scheme_name(t.scheme)
           << ',' << t.bits << ',' << t.errors << '\n';
    }
}

}  // namespace chirpjrc

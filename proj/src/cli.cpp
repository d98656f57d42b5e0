// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#include "chirpjrc/cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "chirpjrc/ambiguity.hpp"
#include "chirpjrc/channel.hpp"
#include "chirpjrc/comms_rx.hpp"
#include "chirpjrc/config.hpp"
#include "chirpjrc/error.hpp"
#include "chirpjrc/harness.hpp"
#include "chirpjrc/radar_rx.hpp"
#include "chirpjrc/signal_io.hpp"
#include "chirpjrc/waveform.hpp"

namespace chirpjrc {

namespace fs = std::filesystem;

namespace {

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

std::vector<double> parse_snr_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "inf") {
            out.push_back(std::numeric_limits<double>::infinity());
            continue;
        }
        double v = 0.0;
        const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
        if (res.ec != std::errc{} || res.ptr != item.data() + item.size()) {
            throw ConfigError("bad SNR value '" + item + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) throw ConfigError("SNR list is empty");
    return out;
}

SymbolShape parse_shape(const std::string& s) {
    if (s == "triangle") return SymbolShape::TriangleLFM;
    if (s == "vlfm") return SymbolShape::VLFM;
    throw ConfigError("shape must be triangle or vlfm");
}

std::vector<std::uint8_t> parse_bits(const std::string& s) {
    std::vector<std::uint8_t> bits;
    for (char ch : s) {
        if (ch != '0' && ch != '1') throw ConfigError("bits must be a string of 0 and 1");
        bits.push_back(ch == '1' ? 1 : 0);
    }
    if (bits.empty()) throw ConfigError("bit string is empty");
    return bits;
}

std::string write_csv_text(const std::function<void(std::ostream&)>& fn) {
    std::ostringstream ss;
    fn(ss);
    return ss.str();
}

// Shared options and the work to run after the subcommand's own flags are read.
struct Globals {
    std::optional<std::string> config;
    ConfigOverrides overrides;
};

struct Command {
    std::function<void(RunConfig&)> configure;  // apply flags; config errors
    std::function<void(const RunConfig&, std::ostream&)> run;
};

void write_manifest(const RunConfig& cfg, const std::string& name) {
    write_file_atomic(fs::path(cfg.out) / name, to_json_text(cfg));
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Triangle/V-LFM joint radar-communications simulator", "chirpjrc"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    std::string preset;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string out_dir;
    app.add_option("--config", g.config, "JSON run configuration");
    auto* preset_opt = app.add_option("--preset", preset, "Built-in parameters")
                           ->check(CLI::IsMember({"paper", "desk"}));
    auto* seed_opt = app.add_option("--seed", seed, "Master seed");
    auto* out_opt = app.add_option("--out", out_dir, "Output directory");
    auto* threads_opt = app.add_option("--threads", threads, "Worker threads (0 = auto)");

    std::map<CLI::App*, Command> commands;

    // waveform
    {
        auto* sub = app.add_subcommand("waveform", "Export a symbol, frame or bit stream");
        auto shape = std::make_shared<std::string>("triangle");
        auto bits = std::make_shared<std::string>();
        auto scheme = std::make_shared<std::string>("proposed");
        auto output = std::make_shared<std::string>();
        auto ifreq = std::make_shared<std::string>();
        sub->add_option("--shape", *shape, "triangle | vlfm | fmcw | lfm-up | lfm-down")
            ->check(CLI::IsMember({"triangle", "vlfm", "fmcw", "lfm-up", "lfm-down"}));
        sub->add_option("--bits", *bits, "Modulate this 0/1 string instead of one shape");
        sub->add_option("--scheme", *scheme, "Bit-stream scheme: proposed | lfm_mf")
            ->check(CLI::IsMember({"proposed", "lfm_mf"}));
        sub->add_option("--output", *output, "Signal path (.csv for CSV, otherwise cf32)");
        sub->add_option("--ifreq", *ifreq, "Also write instantaneous frequency CSV (t,f_hz)");
        commands[sub] = {[](RunConfig& c) { c.command = "waveform"; },
                         [=](const RunConfig& c, std::ostream& os) {
                             std::optional<ComplexSignal> sig;
                             if (!bits->empty()) {
                                 const auto b = parse_bits(*bits);
                                 sig = parse_scheme(*scheme) == CommsScheme::Proposed
                                           ? modulate_bits(c.waveform, b)
                                           : modulate_bits_lfm(c.waveform, b);
                             } else if (*shape == "fmcw") {
                                 sig = gen_fmcw_frame(c.waveform);
                             } else if (*shape == "lfm-up") {
                                 sig = gen_lfm_pulse(c.waveform, ChirpDirection::Up);
                             } else if (*shape == "lfm-down") {
                                 sig = gen_lfm_pulse(c.waveform, ChirpDirection::Down);
                             } else {
                                 sig = gen_symbol(c.waveform, parse_shape(*shape));
                             }
                             const fs::path path = output->empty()
                                                       ? fs::path(c.out) / "waveform.cf32"
                                                       : fs::path(*output);
                             write_signal(path, *sig);
                             if (!ifreq->empty()) {
                                 const auto f = instantaneous_frequency(*sig);
                                 std::string text = "t,f_hz\n";
                                 for (std::size_t n = 0; n < f.size(); ++n) {
                                     text += num(sig->time(n)) + ',' + num(f[n]) + '\n';
                                 }
                                 write_file_atomic(*ifreq, text);
                             }
                             os << "wrote " << sig->size() << " samples to " << path.string()
                                << '\n';
                         }};
    }

    // channel
    {
        auto* sub = app.add_subcommand("channel", "Apply echo, fading and noise to a signal file");
        auto input = std::make_shared<std::string>();
        auto output = std::make_shared<std::string>();
        auto range = std::make_shared<std::optional<double>>();
        auto velocity = std::make_shared<double>(DebrisTarget{}.velocity_mps);
        auto amplitude = std::make_shared<double>(1.0);
        auto phase = std::make_shared<double>(0.0);
        auto snr = std::make_shared<std::optional<double>>();
        auto snr_ref = std::make_shared<std::string>("sample");
        auto k_factor = std::make_shared<std::optional<double>>();
        auto block = std::make_shared<std::size_t>(0);
        sub->add_option("--input", *input, "Input signal file")->required();
        sub->add_option("--output", *output, "Output signal file");
        sub->add_option("--range", *range, "Target range (m); enables the echo");
        sub->add_option("--velocity", *velocity, "Target closing speed (m/s)");
        sub->add_option("--amplitude", *amplitude, "Echo amplitude");
        sub->add_option("--phase", *phase, "Echo phase (rad)");
        sub->add_option("--snr", *snr, "Add noise at this SNR (dB)");
        sub->add_option("--snr-ref", *snr_ref, "sample | symbol")
            ->check(CLI::IsMember({"sample", "symbol"}));
        sub->add_option("--k-factor", *k_factor, "Apply Rician block fading with this K");
        sub->add_option("--block", *block, "Fading block length in samples (default: one symbol)");
        commands[sub] = {[](RunConfig& c) { c.command = "channel"; },
                         [=](const RunConfig& c, std::ostream& os) {
                             ComplexSignal sig = read_signal(*input);
                             const double power = sig.mean_power();
                             if (*range) {
                                 DebrisTarget t{**range, *velocity, *amplitude, *phase};
                                 sig = echo(sig, t, c.waveform);
                             }
                             const std::size_t symbol = c.waveform.samples_per_symbol();
                             if (*k_factor) {
                                 const RicianChannel ch{**k_factor, derive_seed(c.seed, 2)};
                                 sig = apply_rician(sig, ch, *block == 0 ? symbol : *block);
                             }
                             if (*snr) {
                                 AwgnOptions opts;
                                 if (*snr_ref == "symbol") {
                                     opts.reference = SnrReference::PerSymbol;
                                     opts.symbol_samples = symbol;
                                     opts.reference_power = power;
                                 }
                                 sig = add_awgn(sig, **snr, derive_seed(c.seed, 1), opts);
                             }
                             const fs::path path = output->empty() ? fs::path(c.out) / "channel.cf32"
                                                                   : fs::path(*output);
                             write_signal(path, sig);
                             os << "wrote " << sig.size() << " samples to " << path.string() << '\n';
                         }};
    }

    // estimate
    {
        auto* sub = app.add_subcommand("estimate", "Estimate range and velocity from an echo");
        auto input = std::make_shared<std::string>();
        auto shape = std::make_shared<std::string>("triangle");
        auto diag = std::make_shared<std::string>();
        auto no_regime = std::make_shared<bool>(false);
        sub->add_option("--input", *input, "Received signal file")->required();
        sub->add_option("--shape", *shape, "Transmitted waveform: triangle | vlfm | fmcw")
            ->check(CLI::IsMember({"triangle", "vlfm", "fmcw"}));
        sub->add_option("--diagnostics", *diag, "Diagnostics JSON path");
        sub->add_flag("--no-regime-check", *no_regime, "Accept f_d <= mu tau");
        commands[sub] = {
            [=](RunConfig& c) {
                c.command = "estimate";
                if (*no_regime) c.receiver.enforce_regime = false;
            },
            [=](const RunConfig& c, std::ostream& os) {
                const ComplexSignal rx = read_signal(*input);
                const EstimationResult r =
                    *shape == "fmcw" ? estimate_target_fmcw(rx, c.waveform, c.receiver)
                                     : estimate_target(rx, parse_shape(*shape), c.waveform, c.receiver);
                os << "f_up_hz,f_down_hz,range_m,velocity_mps\n"
                   << num(r.beat.f_up) << ',' << num(r.beat.f_down) << ',' << num(r.range_m) << ','
                   << num(r.velocity_mps) << '\n';
                auto seg = [](const SegmentDiagnostics& s) {
                    return nlohmann::json{{"signed_beat_hz", s.signed_beat_hz},
                                          {"root_modulus", s.music.root_modulus},
                                          {"subarray", s.music.subarray},
                                          {"snapshots", s.music.snapshots},
                                          {"samples", s.samples}};
                };
                const nlohmann::json d = {{"shape", *shape},
                                          {"decimation", c.receiver.decimation},
                                          {"first_segment", seg(r.first)},
                                          {"second_segment", seg(r.second)}};
                const fs::path path =
                    diag->empty() ? fs::path(c.out) / "estimate_diagnostics.json" : fs::path(*diag);
                write_file_atomic(path, d.dump(2) + "\n");
            }};
    }

    // demod
    {
        auto* sub = app.add_subcommand("demod", "Demodulate a received bit stream");
        auto input = std::make_shared<std::string>();
        auto scheme = std::make_shared<std::string>("proposed");
        auto n_bits = std::make_shared<std::size_t>(0);
        auto stats = std::make_shared<std::string>();
        sub->add_option("--input", *input, "Received signal file")->required();
        sub->add_option("--scheme", *scheme, "proposed | lfm_mf")
            ->check(CLI::IsMember({"proposed", "lfm_mf"}));
        sub->add_option("--nbits", *n_bits, "Bit count (default: from the signal length)");
        sub->add_option("--stats", *stats, "Per-symbol statistics CSV");
        commands[sub] = {[](RunConfig& c) { c.command = "demod"; },
                         [=](const RunConfig& c, std::ostream& os) {
                             const ComplexSignal rx = read_signal(*input);
                             const CommsScheme s = parse_scheme(*scheme);
                             const std::size_t per = samples_per_bit(s, c.waveform);
                             const std::size_t n = *n_bits != 0 ? *n_bits : rx.size() / per;
                             std::vector<DecisionStatistics> st;
                             const auto bits = demodulate_stream(rx, n, s, c.waveform, &st);
                             std::string line;
                             for (auto b : bits) line += b != 0 ? '1' : '0';
                             os << line << '\n';
                             if (!stats->empty()) {
                                 std::string text = "branch_tri,branch_v,bit\n";
                                 for (const auto& d : st) {
                                     text += num(d.branch_tri) + ',' + num(d.branch_v) + ',' +
                                             (d.decided_bit != 0 ? "1" : "0") + '\n';
                                 }
                                 write_file_atomic(*stats, text);
                             }
                         }};
    }

    // ambiguity
    {
        auto* sub = app.add_subcommand("ambiguity", "Evaluate the ambiguity function on a grid");
        auto shape = std::make_shared<std::string>("triangle");
        auto method = std::make_shared<std::string>("analytic");
        auto tau_points = std::make_shared<std::size_t>(241);
        auto fd_points = std::make_shared<std::size_t>(241);
        auto tau_span = std::make_shared<double>(1.8);
        auto fd_span = std::make_shared<double>(4.0);
        auto output = std::make_shared<std::string>();
        auto cuts = std::make_shared<bool>(false);
        sub->add_option("--shape", *shape, "triangle | vlfm")
            ->check(CLI::IsMember({"triangle", "vlfm"}));
        sub->add_option("--method", *method, "analytic | numeric")
            ->check(CLI::IsMember({"analytic", "numeric"}));
        sub->add_option("--tau-points", *tau_points, "Delay grid points");
        sub->add_option("--fd-points", *fd_points, "Doppler grid points");
        sub->add_option("--tau-span", *tau_span, "Delay half-span in units of T");
        sub->add_option("--fd-span", *fd_span, "Doppler half-span in units of 1/T");
        sub->add_option("--output", *output, "Grid CSV path");
        sub->add_flag("--cuts", *cuts, "Also write zero-Doppler and zero-delay cuts");
        commands[sub] = {
            [=](RunConfig& c) {
                c.command = "ambiguity";
                if (*tau_points < 1 || *fd_points < 1) throw ConfigError("grid needs >= 1 point");
                if (!(*tau_span > 0.0) || !(*fd_span > 0.0)) throw ConfigError("spans must be > 0");
            },
            [=](const RunConfig& c, std::ostream& os) {
                const double T = c.waveform.t_half;
                const auto taus = linspace(-*tau_span * T, *tau_span * T, *tau_points);
                const auto fds = linspace(-*fd_span / T, *fd_span / T, *fd_points);
                const AmbiguityGrid grid = ambiguity_grid(
                    c.waveform, parse_shape(*shape), taus, fds,
                    *method == "numeric" ? AmbiguityMethod::Numeric : AmbiguityMethod::Analytic);
                const fs::path path =
                    output->empty() ? fs::path(c.out) / "ambiguity.csv" : fs::path(*output);
                std::string text = "tau_s,fd_hz,mag\n";
                for (std::size_t i = 0; i < taus.size(); ++i) {
                    for (std::size_t j = 0; j < fds.size(); ++j) {
                        text += num(taus[i]) + ',' + num(fds[j]) + ',' + num(grid.at(i, j)) + '\n';
                    }
                }
                write_file_atomic(path, text);
                os << "wrote " << taus.size() * fds.size() << " cells to " << path.string() << '\n';
                if (!*cuts) return;
                const auto zero_tau = std::find(taus.begin(), taus.end(), 0.0);
                const auto zero_fd = std::find(fds.begin(), fds.end(), 0.0);
                if (zero_tau == taus.end() || zero_fd == fds.end()) {
                    throw ResolutionUndefinedError("cuts need the origin on the grid (odd point counts)");
                }
                const std::size_t i0 = static_cast<std::size_t>(zero_tau - taus.begin());
                const std::size_t j0 = static_cast<std::size_t>(zero_fd - fds.begin());
                std::string delay = "tau_s,mag\n";
                for (std::size_t i = 0; i < taus.size(); ++i) {
                    delay += num(taus[i]) + ',' + num(grid.at(i, j0)) + '\n';
                }
                std::string doppler = "fd_hz,mag\n";
                for (std::size_t j = 0; j < fds.size(); ++j) {
                    doppler += num(fds[j]) + ',' + num(grid.at(i0, j)) + '\n';
                }
                const fs::path stem = path.parent_path() / path.stem();
                write_file_atomic(stem.string() + "_delay_cut.csv", delay);
                write_file_atomic(stem.string() + "_doppler_cut.csv", doppler);
                for (CutAxis axis : {CutAxis::Delay, CutAxis::Doppler}) {
                    const char* name = axis == CutAxis::Delay ? "delay_resolution_s" : "doppler_resolution_hz";
                    try {
                        const double width = resolution_from_cut(grid, axis);
                        os << name << ',' << num(width) << '\n';
                    } catch (const ResolutionUndefinedError& e) {
                        os << name << ",undefined (" << e.what() << ")\n";
                    }
                }
            }};
    }

    // radar-sweep
    {
        auto* sub = app.add_subcommand("radar-sweep", "Radar accuracy versus SNR, proposed vs FMCW");
        auto trials = std::make_shared<std::optional<std::size_t>>();
        auto snr = std::make_shared<std::optional<std::string>>();
        auto record = std::make_shared<bool>(false);
        sub->add_option("--trials", *trials, "Trials per SNR point");
        sub->add_option("--snr", *snr, "Comma-separated SNR list in dB (\"inf\" allowed)");
        sub->add_flag("--record-trials", *record, "Write per-trial records with seeds");
        commands[sub] = {[=](RunConfig& c) {
                             c.command = "radar-sweep";
                             if (*trials) c.radar_trials = **trials;
                             if (*snr) c.radar_snr_db = parse_snr_list(**snr);
                             if (*record) c.radar_record_trials = true;
                         },
                         [](const RunConfig& c, std::ostream& os) {
                             const RadarSweepResult r = run_radar_sweep(c.radar_sweep());
                             const fs::path dir(c.out);
                             write_manifest(c, "radar_manifest.json");
                             write_file_atomic(dir / "radar.csv", write_csv_text([&](std::ostream& s) {
                                                   write_radar_csv(s, r);
                                               }));
                             if (c.radar_record_trials) {
                                 write_file_atomic(dir / "radar_trials.csv",
                                                   write_csv_text([&](std::ostream& s) {
                                                       write_radar_records_csv(s, r);
                                                   }));
                             }
                             write_radar_csv(os, r);
                         }};
    }

    // ber-sweep
    {
        auto* sub = app.add_subcommand("ber-sweep", "BER versus Eb/N0, proposed vs LFM matched filter");
        auto bits = std::make_shared<std::optional<std::size_t>>();
        auto block = std::make_shared<std::optional<std::size_t>>();
        auto k_factor = std::make_shared<std::optional<double>>();
        auto snr = std::make_shared<std::optional<std::string>>();
        auto record = std::make_shared<bool>(false);
        sub->add_option("--bits", *bits, "Bits per SNR point");
        sub->add_option("--block-bits", *block, "Bits per seeded trial");
        sub->add_option("--k-factor", *k_factor, "Rician K factor");
        sub->add_option("--snr", *snr, "Comma-separated Eb/N0 list in dB (\"inf\" allowed)");
        sub->add_flag("--record-trials", *record, "Write per-trial records with seeds");
        commands[sub] = {[=](RunConfig& c) {
                             c.command = "ber-sweep";
                             if (*bits) c.ber_bits = **bits;
                             if (*block) c.ber_block_bits = **block;
                             if (*k_factor) c.k_factor = **k_factor;
                             if (*snr) c.ber_snr_db = parse_snr_list(**snr);
                             if (*record) c.ber_record_trials = true;
                         },
                         [](const RunConfig& c, std::ostream& os) {
                             const BerSweepResult r = run_ber_sweep(c.ber_sweep());
                             const fs::path dir(c.out);
                             write_manifest(c, "ber_manifest.json");
                             write_file_atomic(dir / "ber.csv", write_csv_text([&](std::ostream& s) {
                                                   write_ber_csv(s, r);
                                               }));
                             if (c.ber_record_trials) {
                                 write_file_atomic(dir / "ber_trials.csv",
                                                   write_csv_text([&](std::ostream& s) {
                                                       write_ber_records_csv(s, r);
                                                   }));
                             }
                             write_ber_csv(os, r);
                         }};
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "chirpjrc: " << e.what() << '\n';
        return kExitConfig;
    }

    CLI::App* chosen = app.get_subcommands().front();
    const Command& cmd = commands.at(chosen);

    RunConfig cfg;
    try {
        if (*preset_opt) g.overrides.preset = preset;
        if (*seed_opt) g.overrides.seed = seed;
        if (*threads_opt) g.overrides.threads = threads;
        if (*out_opt) g.overrides.out = out_dir;
        std::optional<fs::path> file;
        if (g.config) file = fs::path(*g.config);
        cfg = resolve_config(file, g.overrides);
        cmd.configure(cfg);
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        err << "chirpjrc: configuration error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        cmd.run(cfg, out);
    } catch (const std::exception& e) {
        err << "chirpjrc: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}

}  // namespace chirpjrc

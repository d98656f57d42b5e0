// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#include "chirpjrc/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "chirpjrc/error.hpp"

namespace chirpjrc {

using nlohmann::json;

namespace {

std::vector<double> snr_range(double lo, double hi, double step) {
    std::vector<double> v;
    for (double s = lo; s <= hi + 1e-9; s += step) v.push_back(s);
    return v;
}

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, _] : obj.items()) {
        if (!allowed.contains(k)) {
            throw ConfigError("unknown key '" + k + "' in " + where);
        }
    }
}

double get_number(const json& obj, const char* key, double fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
    return v.get<double>();
}

std::uint64_t get_count(const json& obj, const char* key, std::uint64_t fallback,
                        const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_unsigned()) {
        throw ConfigError(where + "." + key + " must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

bool get_bool(const json& obj, const char* key, bool fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean()) throw ConfigError(where + "." + key + " must be true or false");
    return v.get<bool>();
}

std::string get_string(const json& obj, const char* key, const std::string& fallback,
                       const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string()) throw ConfigError(where + "." + key + " must be a string");
    return v.get<std::string>();
}

std::vector<double> get_snr_axis(const json& obj, const std::vector<double>& fallback,
                                 const std::string& where) {
    if (!obj.contains("snr_db")) return fallback;
    const json& arr = obj.at("snr_db");
    if (!arr.is_array()) throw ConfigError(where + ".snr_db must be an array");
    std::vector<double> out;
    for (const json& v : arr) {
        if (v.is_number()) {
            out.push_back(v.get<double>());
        } else if (v.is_string() && v.get<std::string>() == "inf") {
            out.push_back(std::numeric_limits<double>::infinity());
        } else {
            throw ConfigError(where + ".snr_db entries must be numbers or \"inf\"");
        }
    }
    return out;
}

json snr_to_json(const std::vector<double>& axis) {
    json arr = json::array();
    for (double s : axis) {
        if (std::isinf(s)) {
            arr.push_back("inf");
        } else {
            arr.push_back(s);
        }
    }
    return arr;
}

void apply_preset(RunConfig& c, const std::string& name) {
    try {
        c.waveform = WaveformParams::preset(name);
    } catch (const ParameterError& e) {
        throw ConfigError(e.what());
    }
    c.preset = name;
}

void apply_json(RunConfig& c, const json& root, bool keep_preset) {
    check_keys(root, "config",
               {"preset", "waveform", "scenario", "channel", "receiver", "radar_sweep", "ber_sweep",
                "seed", "threads", "out", "command"});
    if (!keep_preset) {
        if (root.contains("preset")) apply_preset(c, get_string(root, "preset", "", "config"));
        if (root.contains("waveform")) {
            const json& w = root.at("waveform");
            check_keys(w, "waveform", {"f0_hz", "delta_f_hz", "t_half_s", "fs_hz"});
            c.waveform.f0 = get_number(w, "f0_hz", c.waveform.f0, "waveform");
            c.waveform.delta_f = get_number(w, "delta_f_hz", c.waveform.delta_f, "waveform");
            c.waveform.t_half = get_number(w, "t_half_s", c.waveform.t_half, "waveform");
            c.waveform.fs = get_number(w, "fs_hz", c.waveform.fs, "waveform");
        }
    }
    if (root.contains("scenario")) {
        const json& s = root.at("scenario");
        check_keys(s, "scenario",
                   {"range_mean_m", "range_std_m", "velocity_mean_mps", "velocity_std_mps"});
        c.scenario.range_mean_m = get_number(s, "range_mean_m", c.scenario.range_mean_m, "scenario");
        c.scenario.range_std_m = get_number(s, "range_std_m", c.scenario.range_std_m, "scenario");
        c.scenario.velocity_mean_mps =
            get_number(s, "velocity_mean_mps", c.scenario.velocity_mean_mps, "scenario");
        c.scenario.velocity_std_mps =
            get_number(s, "velocity_std_mps", c.scenario.velocity_std_mps, "scenario");
    }
    if (root.contains("channel")) {
        const json& ch = root.at("channel");
        check_keys(ch, "channel", {"k_factor"});
        c.k_factor = get_number(ch, "k_factor", c.k_factor, "channel");
    }

    // Receiver defaults follow the resolved waveform unless given explicitly.
    c.receiver = ReceiverConfig::defaults_for(c.waveform);
    if (root.contains("receiver")) {
        const json& r = root.at("receiver");
        check_keys(r, "receiver",
                   {"decimation", "max_subarray", "edge_trim_fraction", "max_range_m",
                    "max_speed_mps"});
        c.receiver.decimation = get_count(r, "decimation", c.receiver.decimation, "receiver");
        c.receiver.max_subarray = get_count(r, "max_subarray", c.receiver.max_subarray, "receiver");
        c.receiver.edge_trim_fraction =
            get_number(r, "edge_trim_fraction", c.receiver.edge_trim_fraction, "receiver");
        c.receiver.max_range_m = get_number(r, "max_range_m", c.receiver.max_range_m, "receiver");
        c.receiver.max_speed_mps =
            get_number(r, "max_speed_mps", c.receiver.max_speed_mps, "receiver");
    }
    if (root.contains("radar_sweep")) {
        const json& r = root.at("radar_sweep");
        check_keys(r, "radar_sweep", {"snr_db", "trials", "record_trials"});
        c.radar_snr_db = get_snr_axis(r, c.radar_snr_db, "radar_sweep");
        c.radar_trials = get_count(r, "trials", c.radar_trials, "radar_sweep");
        c.radar_record_trials = get_bool(r, "record_trials", c.radar_record_trials, "radar_sweep");
    }
    if (root.contains("ber_sweep")) {
        const json& b = root.at("ber_sweep");
        check_keys(b, "ber_sweep", {"snr_db", "bits", "block_bits", "record_trials"});
        c.ber_snr_db = get_snr_axis(b, c.ber_snr_db, "ber_sweep");
        c.ber_bits = get_count(b, "bits", c.ber_bits, "ber_sweep");
        c.ber_block_bits = get_count(b, "block_bits", c.ber_block_bits, "ber_sweep");
        c.ber_record_trials = get_bool(b, "record_trials", c.ber_record_trials, "ber_sweep");
    }
    c.seed = get_count(root, "seed", c.seed, "config");
    const std::uint64_t threads = get_count(root, "threads", c.threads, "config");
    if (threads > 4096) throw ConfigError("config.threads is out of range");
    c.threads = static_cast<unsigned>(threads);
    c.out = get_string(root, "out", c.out, "config");
    c.command = get_string(root, "command", c.command, "config");
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
}

}  // namespace

RunConfig::RunConfig()
    : radar_snr_db(snr_range(-10.0, 14.0, 2.0)), ber_snr_db(snr_range(-4.0, 14.0, 2.0)) {}

void RunConfig::validate() const {
    waveform.validate();
    scenario.validate();
    receiver.validate(waveform);
    if (!(k_factor >= 0.0)) throw ParameterError("channel.k_factor must be >= 0");
    radar_sweep().validate();
    ber_sweep().validate();
    if (out.empty()) throw ParameterError("output directory must be nonempty");
}

RadarSweepConfig RunConfig::radar_sweep() const {
    RadarSweepConfig r;
    r.params = waveform;
    r.receiver = receiver;
    r.scenario = scenario;
    r.snr_db = radar_snr_db;
    r.trials = radar_trials;
    r.master_seed = seed;
    r.threads = threads;
    r.keep_records = radar_record_trials;
    return r;
}

BerSweepConfig RunConfig::ber_sweep() const {
    BerSweepConfig b;
    b.params = waveform;
    b.k_factor = k_factor;
    b.snr_db = ber_snr_db;
    b.bits = ber_bits;
    b.block_bits = ber_block_bits;
    b.master_seed = seed;
    b.threads = threads;
    b.keep_records = ber_record_trials;
    return b;
}

RunConfig parse_config(const std::string& text) {
    RunConfig c;
    apply_json(c, parse_json(text), false);
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

RunConfig resolve_config(const std::optional<std::filesystem::path>& file,
                         const ConfigOverrides& overrides) {
    RunConfig c;
    if (overrides.preset) apply_preset(c, *overrides.preset);
    if (file) {
        std::ifstream in(*file);
        if (!in) throw ConfigError("cannot read config file " + file->string());
        std::ostringstream ss;
        ss << in.rdbuf();
        apply_json(c, parse_json(ss.str()), overrides.preset.has_value());
    } else {
        c.receiver = ReceiverConfig::defaults_for(c.waveform);
    }
    if (overrides.seed) c.seed = *overrides.seed;
    if (overrides.threads) c.threads = *overrides.threads;
    if (overrides.out) c.out = *overrides.out;
    c.validate();
    return c;
}

std::string to_json_text(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    j["preset"] = c.preset;
    j["waveform"] = {{"f0_hz", c.waveform.f0},
                     {"delta_f_hz", c.waveform.delta_f},
                     {"t_half_s", c.waveform.t_half},
                     {"fs_hz", c.waveform.fs}};
    j["scenario"] = {{"range_mean_m", c.scenario.range_mean_m},
                     {"range_std_m", c.scenario.range_std_m},
                     {"velocity_mean_mps", c.scenario.velocity_mean_mps},
                     {"velocity_std_mps", c.scenario.velocity_std_mps}};
    j["channel"] = {{"k_factor", c.k_factor}};
    j["receiver"] = {{"decimation", c.receiver.decimation},
                     {"max_subarray", c.receiver.max_subarray},
                     {"edge_trim_fraction", c.receiver.edge_trim_fraction},
                     {"max_range_m", c.receiver.max_range_m},
                     {"max_speed_mps", c.receiver.max_speed_mps}};
    j["radar_sweep"] = {{"snr_db", snr_to_json(c.radar_snr_db)},
                        {"trials", c.radar_trials},
                        {"record_trials", c.radar_record_trials}};
    j["ber_sweep"] = {{"snr_db", snr_to_json(c.ber_snr_db)},
                      {"bits", c.ber_bits},
                      {"block_bits", c.ber_block_bits},
                      {"record_trials", c.ber_record_trials}};
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    j["out"] = c.out;
    return j.dump(2) + "\n";
}

}  // namespace chirpjrc

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "chirpjrc/cli.hpp"
#include "chirpjrc/config.hpp"
#include "chirpjrc/error.hpp"
#include "chirpjrc/signal_io.hpp"

using namespace chirpjrc;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag)
        : path(fs::temp_directory_path() / ("chirpjrc_test_" + tag + "_" + std::to_string(std::rand()))) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli_main(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const fs::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

}  // namespace

TEST_CASE("config parsing") {
    const RunConfig d = parse_config("{}");
    CHECK(d.preset == "desk");
    CHECK(d.waveform.fs == WaveformParams::desk().fs);
    CHECK(d.radar_trials == 500);
    CHECK(d.ber_bits == 20000);
    CHECK(d.radar_snr_db.size() == 13);
    CHECK(d.ber_snr_db.size() == 10);

    const RunConfig c = parse_config(R"({"preset": "paper", "seed": 9,
        "radar_sweep": {"snr_db": [0, "inf"], "trials": 3},
        "channel": {"k_factor": 4.5}})");
    CHECK(c.waveform.fs == WaveformParams::paper().fs);
    CHECK(c.receiver.decimation == 5);
    CHECK(c.seed == 9);
    CHECK(c.k_factor == 4.5);
    REQUIRE(c.radar_snr_db.size() == 2);
    CHECK(std::isinf(c.radar_snr_db[1]));
    CHECK(to_json_text(parse_config(to_json_text(c))) == to_json_text(c));

    CHECK_THROWS_AS((void)parse_config(R"({"seeed": 1})"), ConfigError);
    CHECK_THROWS_AS((void)parse_config(R"({"receiver": {"decimate": 2}})"), ConfigError);
    CHECK_THROWS_AS((void)parse_config(R"({"seed": "one"})"), ConfigError);
    CHECK_THROWS_AS((void)parse_config(R"({"radar_sweep": {"snr_db": ["-inf"]}})"), ConfigError);
    CHECK_THROWS_AS((void)parse_config("{"), ConfigError);
    CHECK_THROWS_AS((void)parse_config(R"({"preset": "huge"})"), ConfigError);
}

TEST_CASE("preset override replaces the file's waveform") {
    TempDir dir("cfg");
    spit(dir.path / "c.json", R"({"preset": "desk", "waveform": {"fs_hz": 40e6}, "seed": 3})");
    const RunConfig from_file = resolve_config(dir.path / "c.json", {});
    CHECK(from_file.waveform.fs == 40e6);
    ConfigOverrides o;
    o.preset = "paper";
    o.seed = 11;
    const RunConfig c = resolve_config(dir.path / "c.json", o);
    CHECK(c.waveform.fs == WaveformParams::paper().fs);
    CHECK(c.seed == 11);
    CHECK_THROWS_AS((void)load_config(dir.path / "missing.json"), ConfigError);
}

TEST_CASE("signal files round trip") {
    TempDir dir("io");
    const auto sig = gen_symbol(WaveformParams::desk(), SymbolShape::VLFM);
    write_signal(dir.path / "a.cf32", sig);
    const auto a = read_signal(dir.path / "a.cf32");
    CHECK(a.size() == sig.size());
    CHECK(a.fs() == sig.fs());
    CHECK(a.t_start() == sig.t_start());
    double worst = 0.0;
    for (std::size_t n = 0; n < sig.size(); ++n) worst = std::max(worst, std::abs(a[n] - sig[n]) / std::abs(sig[n]));
    CHECK(worst < 1e-6);

    write_signal(dir.path / "b.csv", sig);
    const auto b = read_signal(dir.path / "b.csv");
    CHECK(b.size() == sig.size());
    CHECK(same_rate(b.fs(), sig.fs()));
    CHECK(b.t_start() == doctest::Approx(sig.t_start()));
    CHECK(std::abs(b[77] - sig[77]) < 1e-12);

    CHECK_THROWS((void)read_signal(dir.path / "nope.cf32"));
    fs::remove(dir.path / "a.cf32.hdr");
    CHECK_THROWS((void)read_signal(dir.path / "a.cf32"));
}

TEST_CASE("exit codes") {
    TempDir dir("exit");
    const std::string out = dir.path.string();
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"--bogus"}).code == 2);
    CHECK(run({}).code == 2);
    spit(dir.path / "bad.json", R"({"unknown": 1})");
    CHECK(run({"--config", (dir.path / "bad.json").string(), "--out", out, "waveform"}).code == 2);
    CHECK(run({"--out", out, "waveform", "--shape", "square"}).code == 2);
    CHECK(run({"--out", out, "estimate", "--input", (dir.path / "none.cf32").string()}).code == 1);

    REQUIRE(run({"--out", out, "waveform", "--bits", "10", "--output", (dir.path / "bits.cf32").string()}).code == 0);
    CHECK(run({"--out", out, "estimate", "--input", (dir.path / "bits.cf32").string()}).code == 1);
}

TEST_CASE("the installed binary reports exit codes") {
    CHECK(std::system(CHIRPJRC_CLI_PATH " --help > /dev/null") == 0);
    const int rc = std::system(CHIRPJRC_CLI_PATH " --bogus 2> /dev/null");
    CHECK(WEXITSTATUS(rc) == 2);
}

TEST_CASE("waveform at full scale") {
    TempDir dir("paper");
    const auto path = dir.path / "w.cf32";
    REQUIRE(run({"--preset", "paper", "--out", dir.path.string(), "waveform", "--output", path.string()}).code == 0);
    const auto sig = read_signal(path);
    CHECK(sig.size() == 216000);
    CHECK(sig.fs() == 360e6);
}

TEST_CASE("waveform, channel and estimate chain") {
    TempDir dir("chain");
    const std::string out = dir.path.string();
    REQUIRE(run({"--out", out, "waveform", "--shape", "vlfm"}).code == 0);
    REQUIRE(run({"--out", out, "--seed", "4", "channel", "--input", out + "/waveform.cf32", "--range", "250",
                 "--velocity", "10000", "--snr", "20"})
                .code == 0);
    const Run est = run({"--out", out, "estimate", "--input", out + "/channel.cf32", "--shape", "vlfm"});
    REQUIRE(est.code == 0);
    std::istringstream lines(est.out);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header == "f_up_hz,f_down_hz,range_m,velocity_mps");
    std::vector<double> cols;
    std::istringstream cells(row);
    for (std::string cell; std::getline(cells, cell, ',');) cols.push_back(std::stod(cell));
    REQUIRE(cols.size() == 4);
    CHECK(std::abs(cols[2] - 250.0) < 2.0);
    CHECK(std::abs(cols[3] - 10000.0) < 20.0);
    CHECK(fs::exists(dir.path / "estimate_diagnostics.json"));

    const Run demod = run({"--out", out, "demod", "--input", out + "/waveform.cf32", "--nbits", "1"});
    CHECK(demod.code == 0);
    CHECK(demod.out.find('0') != std::string::npos);
}

TEST_CASE("sweeps rerun from their manifest byte for byte") {
    TempDir dir("det");
    const std::string a = (dir.path / "a").string(), b = (dir.path / "b").string();
    REQUIRE(run({"--out", a, "--seed", "3", "radar-sweep", "--trials", "3", "--snr", "-5,inf", "--record-trials"}).code == 0);
    REQUIRE(run({"--config", a + "/radar_manifest.json", "--out", b, "radar-sweep"}).code == 0);
    CHECK(slurp(dir.path / "a/radar.csv") == slurp(dir.path / "b/radar.csv"));
    CHECK(slurp(dir.path / "a/radar_trials.csv") == slurp(dir.path / "b/radar_trials.csv"));
    CHECK(slurp(dir.path / "a/radar.csv").rfind("snr_db,scheme,trials,mean_pct_r,mean_pct_v,fail_count\n", 0) == 0);

    REQUIRE(run({"--out", a, "ber-sweep", "--bits", "300", "--block-bits", "100", "--snr", "0,6"}).code == 0);
    REQUIRE(run({"--config", a + "/ber_manifest.json", "--out", b, "--threads", "2", "ber-sweep"}).code == 0);
    CHECK(slurp(dir.path / "a/ber.csv") == slurp(dir.path / "b/ber.csv"));
}

TEST_CASE("ambiguity subcommand writes the surface and cuts") {
    TempDir dir("amb");
    const std::string out = dir.path.string();
    const Run r = run({"--out", out, "ambiguity", "--tau-points", "21", "--fd-points", "11", "--cuts"});
    REQUIRE(r.code == 0);
    const std::string surface = slurp(dir.path / "ambiguity.csv");
    CHECK(surface.rfind("tau_s,fd_hz,mag\n", 0) == 0);
    CHECK(std::count(surface.begin(), surface.end(), '\n') == 1 + 21 * 11);
    CHECK(slurp(dir.path / "ambiguity_delay_cut.csv").rfind("tau_s,mag\n", 0) == 0);
    CHECK(slurp(dir.path / "ambiguity_doppler_cut.csv").rfind("fd_hz,mag\n", 0) == 0);
}

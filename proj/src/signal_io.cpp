// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#include "chirpjrc/signal_io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "chirpjrc/error.hpp"

namespace chirpjrc {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_all(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path header_path(const fs::path& path) { return fs::path(path.string() + ".hdr"); }

std::uint32_t to_le(std::uint32_t v) {
    if constexpr (std::endian::native == std::endian::big) return __builtin_bswap32(v);
    return v;
}

std::string num(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

double parse_double(std::string_view s, const fs::path& path) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw std::runtime_error("malformed number '" + std::string(s) + "' in " + path.string());
    }
    return v;
}

}  // namespace

void write_file_atomic(const fs::path& path, std::string_view content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

void write_signal_cf32(const fs::path& path, const ComplexSignal& sig) {
    std::string bytes(sig.size() * 8, '\0');
    for (std::size_t n = 0; n < sig.size(); ++n) {
        const auto re = to_le(std::bit_cast<std::uint32_t>(static_cast<float>(sig[n].real())));
        const auto im = to_le(std::bit_cast<std::uint32_t>(static_cast<float>(sig[n].imag())));
        std::memcpy(bytes.data() + 8 * n, &re, 4);
        std::memcpy(bytes.data() + 8 * n + 4, &im, 4);
    }
    const json hdr = {{"fs", sig.fs()},
                      {"t_start", sig.t_start()},
                      {"count", sig.size()},
                      {"format", "cf32_le"}};
    write_file_atomic(path, bytes);
    write_file_atomic(header_path(path), hdr.dump(2) + "\n");
}

ComplexSignal read_signal_cf32(const fs::path& path) {
    json hdr;
    try {
        hdr = json::parse(read_all(header_path(path)));
    } catch (const json::exception& e) {
        throw std::runtime_error("bad signal header for " + path.string() + ": " + e.what());
    }
    if (hdr.value("format", "") != "cf32_le") {
        throw std::runtime_error("unsupported signal format in " + header_path(path).string());
    }
    const double fs = hdr.at("fs").get<double>();
    const double t_start = hdr.at("t_start").get<double>();
    const auto count = hdr.at("count").get<std::size_t>();
    const std::string bytes = read_all(path);
    if (bytes.size() != 8 * count) {
        throw std::runtime_error("sample count in header does not match " + path.string());
    }
    std::vector<cdouble> x(count);
    for (std::size_t n = 0; n < count; ++n) {
        std::uint32_t re = 0, im = 0;
        std::memcpy(&re, bytes.data() + 8 * n, 4);
        std::memcpy(&im, bytes.data() + 8 * n + 4, 4);
        x[n] = {std::bit_cast<float>(to_le(re)), std::bit_cast<float>(to_le(im))};
    }
    return {std::move(x), fs, t_start};
}

void write_signal_csv(const fs::path& path, const ComplexSignal& sig) {
    std::string out = "t,re,im\n";
    out.reserve(out.size() + sig.size() * 64);
    for (std::size_t n = 0; n < sig.size(); ++n) {
        out += num(sig.time(n));
        out += ',';
        out += num(sig[n].real());
        out += ',';
        out += num(sig[n].imag());
        out += '\n';
    }
    write_file_atomic(path, out);
}

ComplexSignal read_signal_csv(const fs::path& path) {
    std::istringstream in(read_all(path));
    std::string line;
    if (!std::getline(in, line) || line != "t,re,im") {
        throw std::runtime_error("expected header t,re,im in " + path.string());
    }
    std::vector<double> t;
    std::vector<cdouble> x;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) {
            throw std::runtime_error("malformed row in " + path.string());
        }
        const std::string_view v(line);
        t.push_back(parse_double(v.substr(0, c1), path));
        x.emplace_back(parse_double(v.substr(c1 + 1, c2 - c1 - 1), path),
                       parse_double(v.substr(c2 + 1), path));
    }
    if (t.size() < 2) throw std::runtime_error("CSV signal needs at least two samples");
    const double fs = static_cast<double>(t.size() - 1) / (t.back() - t.front());
    if (!(fs > 0.0)) throw std::runtime_error("CSV time column must increase");
    return {std::move(x), fs, t.front()};
}

void write_signal(const fs::path& path, const ComplexSignal& sig) {
    if (path.extension() == ".csv") {
        write_signal_csv(path, sig);
    } else {
        write_signal_cf32(path, sig);
    }
}

ComplexSignal read_signal(const fs::path& path) {
    return path.extension() == ".csv" ? read_signal_csv(path) : read_signal_cf32(path);
}

}  // namespace chirpjrc

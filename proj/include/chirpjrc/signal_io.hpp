// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#pragma once

#include <filesystem>
#include <string_view>

#include "chirpjrc/signal.hpp"

namespace chirpjrc {

/// Write `content` to a temporary file next to `path` and rename it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Interleaved little-endian float32 I/Q samples at `path`, plus a JSON header
/// at `path` + ".hdr" holding fs, t_start, count and format.
void write_signal_cf32(const std::filesystem::path& path, const ComplexSignal& sig);
[[nodiscard]] ComplexSignal read_signal_cf32(const std::filesystem::path& path);

/// Columns t,re,im with one row per sample.
void write_signal_csv(const std::filesystem::path& path, const ComplexSignal& sig);
[[nodiscard]] ComplexSignal read_signal_csv(const std::filesystem::path& path);

/// Dispatch on extension: ".csv" is CSV, anything else cf32.
void write_signal(const std::filesystem::path& path, const ComplexSignal& sig);
[[nodiscard]] ComplexSignal read_signal(const std::filesystem::path& path);

}  // namespace chirpjrc

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chirpjrc {

/// Exit codes of cli_main.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;

/// Entry point of the chirpjrc tool. args excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chirpjrc

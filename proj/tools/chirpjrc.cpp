// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#include <iostream>
#include <string>
#include <vector>

#include "chirpjrc/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return chirpjrc::cli_main(args, std::cout, std::cerr);
}

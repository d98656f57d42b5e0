// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#pragma once

#include <span>

#include "chirpjrc/signal.hpp"

namespace chirpjrc::fft {

/// In-place unnormalized DFT, X[k] = sum_n x[n] e^{-j 2 pi k n / N}.
void forward(std::span<cdouble> data);
/// In-place unnormalized inverse DFT (no 1/N factor).
void inverse(std::span<cdouble> data);

}  // namespace chirpjrc::fft

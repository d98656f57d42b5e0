// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#pragma once

#include <stdexcept>
#include <string>

namespace chirpjrc {

/// Invalid argument or violated precondition.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The echo arrives after the pulse has ended (round-trip delay >= T).
class BlindSpotError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

/// A frequency estimator could not produce an answer (degenerate covariance, etc.).
class EstimationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Up/down beats are inconsistent with the Doppler-dominant regime (f_d > mu * tau).
class AmbiguousRegimeError : public EstimationError {
public:
    using EstimationError::EstimationError;
};

/// A -3 dB width cannot be measured on the supplied cut.
class ResolutionUndefinedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Configuration file or flag validation failure.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace chirpjrc

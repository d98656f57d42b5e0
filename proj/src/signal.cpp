// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#include "chirpjrc/signal.hpp"

#include <cmath>

#include "chirpjrc/error.hpp"
#include "chirpjrc/kernels.hpp"

namespace chirpjrc {

ComplexSignal::ComplexSignal(std::vector<cdouble> samples, double fs, double t_start)
    : samples_(std::move(samples)), fs_(fs), t_start_(t_start) {
    if (samples_.empty()) throw ParameterError("signal must have at least one sample");
    if (!(fs_ > 0.0) || !std::isfinite(fs_)) throw ParameterError("sample rate must be positive");
    if (!std::isfinite(t_start_)) throw ParameterError("t_start must be finite");
}

double ComplexSignal::energy() const noexcept {
    return kernels::energy(samples_) / fs_;
}

double ComplexSignal::mean_power() const noexcept {
    return kernels::energy(samples_) / static_cast<double>(samples_.size());
}

ComplexSignal ComplexSignal::slice(std::size_t first, std::size_t count) const {
    if (count == 0 || first + count > samples_.size()) {
        throw ParameterError("slice out of range");
    }
    std::vector<cdouble> out(samples_.begin() + static_cast<std::ptrdiff_t>(first),
                             samples_.begin() + static_cast<std::ptrdiff_t>(first + count));
    return {std::move(out), fs_, time(first)};
}

ComplexSignal concatenate(std::span<const ComplexSignal> parts) {
    if (parts.empty()) throw ParameterError("nothing to concatenate");
    std::vector<cdouble> out;
    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    out.reserve(total);
    const double fs = parts.front().fs();
    for (const auto& p : parts) {
        if (p.fs() != fs) throw ParameterError("concatenated signals differ in sample rate");
        out.insert(out.end(), p.samples().begin(), p.samples().end());
    }
    return {std::move(out), fs, parts.front().t_start()};
}

}  // namespace chirpjrc

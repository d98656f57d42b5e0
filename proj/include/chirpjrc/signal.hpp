// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace chirpjrc {

using cdouble = std::complex<double>;

inline constexpr double kSpeedOfLight = 299'792'458.0;

/// Uniformly sampled complex baseband sequence.
///
/// Sample n sits at time t_start + n / fs. The sample vector is never empty
/// and fs is strictly positive; both are checked on construction.
class ComplexSignal {
public:
    ComplexSignal(std::vector<cdouble> samples, double fs, double t_start = 0.0);

    [[nodiscard]] std::size_t size() const noexcept { return samples_.size(); }
    [[nodiscard]] double fs() const noexcept { return fs_; }
    [[nodiscard]] double t_start() const noexcept { return t_start_; }
    [[nodiscard]] double duration() const noexcept {
        return static_cast<double>(samples_.size()) / fs_;
    }
    [[nodiscard]] double time(std::size_t n) const noexcept {
        return t_start_ + static_cast<double>(n) / fs_;
    }

    [[nodiscard]] std::span<const cdouble> samples() const noexcept { return samples_; }
    [[nodiscard]] std::span<cdouble> samples() noexcept { return samples_; }
    [[nodiscard]] const cdouble& operator[](std::size_t n) const noexcept { return samples_[n]; }
    [[nodiscard]] cdouble& operator[](std::size_t n) noexcept { return samples_[n]; }

    /// Continuous-time energy sum |x|^2 / fs.
    [[nodiscard]] double energy() const noexcept;
    /// Mean per-sample power sum |x|^2 / N.
    [[nodiscard]] double mean_power() const noexcept;

    /// Samples [first, first + count) as a new signal on the same time base.
    [[nodiscard]] ComplexSignal slice(std::size_t first, std::size_t count) const;

    /// Release the underlying storage.
    [[nodiscard]] std::vector<cdouble> take() && noexcept { return std::move(samples_); }

private:
    std::vector<cdouble> samples_;
    double fs_;
    double t_start_;
};

/// Sample rates equal to within a relative 1e-9 (rates parsed from text).
[[nodiscard]] inline bool same_rate(double a, double b) noexcept {
    const double d = a > b ? a - b : b - a;
    return d <= 1e-9 * (a > b ? a : b);
}

/// Concatenate signals sharing a sample rate; the result starts at the first
/// signal's t_start.
[[nodiscard]] ComplexSignal concatenate(std::span<const ComplexSignal> parts);

}  // namespace chirpjrc

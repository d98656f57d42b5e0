// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "chirpjrc/signal.hpp"
#include "chirpjrc/waveform.hpp"

namespace chirpjrc {

/// Fresnel integrals C(x) = int_0^x cos(pi u^2 / 2) du, S(x) = int_0^x sin(pi u^2 / 2) du.
struct FresnelPair {
    double c_val = 0.0;
    double s_val = 0.0;
};

/// Power series for |x| <= 1.6, continued fraction for the complementary
/// error function beyond. Accurate to ~1e-15 absolute. Throws ParameterError
/// on non-finite input.
[[nodiscard]] FresnelPair fresnel(double x);

/// |chi(tau, fd)| sampled on a delay/Doppler grid, normalized to the
/// method's own value at the origin.
struct AmbiguityGrid {
    std::vector<double> tau_axis;  ///< s, strictly increasing
    std::vector<double> fd_axis;   ///< Hz, strictly increasing
    std::vector<double> values;    ///< row-major [tau index][fd index]

    [[nodiscard]] double at(std::size_t i_tau, std::size_t i_fd) const {
        return values[i_tau * fd_axis.size() + i_fd];
    }
};

enum class AmbiguityMethod { Analytic, Numeric };
enum class CutAxis { Delay, Doppler };

// Triangle-LFM decomposition. x1 is the up-chirp half on (-T, 0), x2 the
// down-chirp half on (0, T); each term is the corresponding piece of
// int x(t) x*(t - tau) e^{j 2 pi fd t} dt for a unit-energy symbol.

/// Up-chirp self term, nonzero for -T < tau < T.
[[nodiscard]] cdouble chi_u11(const WaveformParams& params, double tau, double fd);
/// Down-chirp self term, nonzero for -T < tau < T.
[[nodiscard]] cdouble chi_u22(const WaveformParams& params, double tau, double fd);
/// Cross term int x2(t) x1*(t - tau) e^{j 2 pi fd t} dt, nonzero for 0 < tau < 2T.
/// Closed form in Fresnel integrals.
[[nodiscard]] cdouble chi_u12(const WaveformParams& params, double tau, double fd);
/// chi_u11 + chi_u22 + chi_u12(tau, fd) + e^{j 2 pi fd tau} conj(chi_u12(-tau, -fd)).
[[nodiscard]] cdouble chi_triangle(const WaveformParams& params, double tau, double fd);

/// Direct Riemann sum of the ambiguity integral on the symbol's sample grid,
/// with the delayed copy evaluated from the continuous envelope. Returns 0
/// when |tau| >= 2T.
[[nodiscard]] cdouble chi_numeric(const WaveformParams& params, SymbolShape shape, double tau,
                                  double fd);

/// Evaluate |chi| over tau_axis x fd_axis. Throws ParameterError for empty or
/// non-increasing axes.
[[nodiscard]] AmbiguityGrid ambiguity_grid(const WaveformParams& params, SymbolShape shape,
                                           std::span<const double> tau_axis,
                                           std::span<const double> fd_axis,
                                           AmbiguityMethod method);

/// -3 dB full width of the cut through the grid peak along `axis`, with
/// linear interpolation between grid points.
[[nodiscard]] double resolution_from_cut(const AmbiguityGrid& grid, CutAxis axis);

/// n evenly spaced points on [lo, hi]; values within 1e-9 steps of zero are snapped to 0.
[[nodiscard]] std::vector<double> linspace(double lo, double hi, std::size_t n);

/// Delay/Doppler axes of the 241 x 241 benchmark grid: tau in [-1.8T, 1.8T], fd in [-4/T, 4/T].
struct BenchmarkAxes {
    std::vector<double> tau;
    std::vector<double> fd;
};
[[nodiscard]] BenchmarkAxes benchmark_axes(const WaveformParams& params);

}  // namespace chirpjrc

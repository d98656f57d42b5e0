// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#include "chirpjrc/ambiguity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "chirpjrc/error.hpp"
#include "chirpjrc/kernels.hpp"

namespace chirpjrc {

namespace {

constexpr double kPi = std::numbers::pi;

struct Interval {
    double a = 0.0;
    double b = 0.0;
    [[nodiscard]] bool empty() const { return !(b > a); }
};

// Overlap intervals in the integration variable s = t - tau, i.e. the support
// of the undelayed factor, for each term. Intervals in tau are half-open.
Interval bounds_u11(double tau, double T) {
    if (tau >= -T && tau < 0.0) return {-T - tau, 0.0};
    if (tau >= 0.0 && tau < T) return {-T, -tau};
    return {};
}

Interval bounds_u22(double tau, double T) {
    if (tau >= -T && tau < 0.0) return {-tau, T};
    if (tau >= 0.0 && tau < T) return {0.0, T - tau};
    return {};
}

Interval bounds_u12(double tau, double T) {
    if (tau > 0.0 && tau < T) return {-tau, 0.0};
    if (tau >= T && tau < 2.0 * T) return {-T, T - tau};
    return {};
}

// int_a^b e^{j 2 pi nu s} ds, stable as nu -> 0.
cdouble linear_phase_integral(double nu, Interval iv) {
    const double width = iv.b - iv.a;
    const double mid = 0.5 * (iv.a + iv.b);
    const double x = kPi * nu * width;
    const double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;
    return std::polar(width * sinc, 2.0 * kPi * nu * mid);
}

double symbol_duration(const WaveformParams& p) { return 2.0 * p.t_half; }

void require_axis(std::span<const double> axis, const char* name) {
    if (axis.empty()) throw ParameterError(std::string(name) + " axis must be nonempty");
    for (std::size_t i = 1; i < axis.size(); ++i) {
        if (!(axis[i] > axis[i - 1])) {
            throw ParameterError(std::string(name) + " axis must be strictly increasing");
        }
    }
}

}  // namespace

cdouble chi_u11(const WaveformParams& params, double tau, double fd) {
    const Interval iv = bounds_u11(tau, params.t_half);
    if (iv.empty()) return {0.0, 0.0};
    const double mu = params.mu();
    // x1(s + tau) x1*(s) e^{j2 pi fd (s + tau)}: the quadratic terms cancel.
    const cdouble lead = std::polar(1.0 / symbol_duration(params),
                                    kPi * mu * tau * tau + 2.0 * kPi * fd * tau);
    return lead * linear_phase_integral(mu * tau + fd, iv);
}

cdouble chi_u22(const WaveformParams& params, double tau, double fd) {
    const Interval iv = bounds_u22(tau, params.t_half);
    if (iv.empty()) return {0.0, 0.0};
    const double mu = params.mu();
    const cdouble lead = std::polar(1.0 / symbol_duration(params),
                                    -kPi * mu * tau * tau + 2.0 * kPi * fd * tau);
    return lead * linear_phase_integral(fd - mu * tau, iv);
}

cdouble chi_u12(const WaveformParams& params, double tau, double fd) {
    const Interval iv = bounds_u12(tau, params.t_half);
    if (iv.empty()) return {0.0, 0.0};
    const double mu = params.mu();
    const double root_mu = std::sqrt(std::abs(mu));
    // Phase of x2(s + tau) x1*(s) e^{j2 pi fd (s + tau)} is
    //   -2 pi mu (s - c)^2 + pi mu (tau - fd/mu)^2 / 2 - pi mu tau^2 + 2 pi fd tau
    // with c = (fd/mu - tau) / 2. Substituting u = 2 sqrt(mu) (s - c) turns the
    // remaining integral into conj(C + jS) differences.
    const double c = 0.5 * (fd / mu - tau);
    const double x_lo = 2.0 * root_mu * (iv.a - c);
    const double x_hi = 2.0 * root_mu * (iv.b - c);
    const FresnelPair lo = fresnel(x_lo);
    const FresnelPair hi = fresnel(x_hi);
    const cdouble bracket{hi.c_val - lo.c_val, -(hi.s_val - lo.s_val)};
    const double shifted = tau - fd / mu;
    const double phase = 0.5 * kPi * mu * shifted * shifted - kPi * mu * tau * tau +
                         2.0 * kPi * fd * tau;
    const double scale = 1.0 / (2.0 * symbol_duration(params) * root_mu);
    return std::polar(scale, phase) * bracket;
}

cdouble chi_triangle(const WaveformParams& params, double tau, double fd) {
    const cdouble mirrored = std::conj(chi_u12(params, -tau, -fd));
    return chi_u11(params, tau, fd) + chi_u22(params, tau, fd) + chi_u12(params, tau, fd) +
           std::polar(1.0, 2.0 * kPi * fd * tau) * mirrored;
}

cdouble chi_numeric(const WaveformParams& params, SymbolShape shape, double tau, double fd) {
    params.validate();
    if (std::abs(tau) >= 2.0 * params.t_half) return {0.0, 0.0};
    const ComplexSignal sym = gen_symbol(params, shape);
    const double fs = params.fs;
    double re = 0.0, im = 0.0;
    for (std::size_t n = 0; n < sym.size(); ++n) {
        const double t = sym.time(n);
        const cdouble delayed = symbol_envelope(params, shape, t - tau);
        if (delayed == cdouble{}) continue;
        const cdouble v = sym[n] * std::conj(delayed) * std::polar(1.0, 2.0 * kPi * fd * t);
        re += v.real();
        im += v.imag();
    }
    return {re / fs, im / fs};
}

namespace {

// Doppler weights conj(e^{j 2 pi fd t_n}) by complex recurrence, re-seeded
// exactly every kReseed samples to bound rounding drift.
void doppler_weights(double fd, const ComplexSignal& sym, std::vector<cdouble>& w) {
    constexpr std::size_t kReseed = 1024;
    const double step = -2.0 * kPi * fd / sym.fs();
    const cdouble rot = std::polar(1.0, step);
    for (std::size_t n = 0; n < sym.size(); ++n) {
        if (n % kReseed == 0) {
            w[n] = std::polar(1.0, -2.0 * kPi * fd * sym.time(n));
        } else {
            w[n] = w[n - 1] * rot;
        }
    }
}

std::vector<double> numeric_grid(const WaveformParams& params, SymbolShape shape,
                                 std::span<const double> taus, std::span<const double> fds) {
    const ComplexSignal sym = gen_symbol(params, shape);
    const std::size_t n = sym.size();
    const double fs = params.fs;
    const double two_t = 2.0 * params.t_half;
    std::vector<double> out(taus.size() * fds.size(), 0.0);

    // Lag products for a block of delays are cached; Doppler weights are rebuilt per block.
    constexpr std::size_t kBudget = std::size_t{1} << 22;
    const std::size_t block = std::max<std::size_t>(1, kBudget / n);
    std::vector<cdouble> products(std::min(block, taus.size()) * n);
    std::vector<cdouble> w(n);
    std::vector<cdouble> scratch(n);

    for (std::size_t t0 = 0; t0 < taus.size(); t0 += block) {
        const std::size_t t1 = std::min(taus.size(), t0 + block);
        for (std::size_t it = t0; it < t1; ++it) {
            std::span<cdouble> row(products.data() + (it - t0) * n, n);
            const double tau = taus[it];
            if (std::abs(tau) >= two_t) {
                std::fill(row.begin(), row.end(), cdouble{});
                continue;
            }
            for (std::size_t k = 0; k < n; ++k) {
                scratch[k] = symbol_envelope(params, shape, sym.time(k) - tau);
            }
            kernels::mul_conj(sym.samples(), scratch, row);
        }
        for (std::size_t jf = 0; jf < fds.size(); ++jf) {
            doppler_weights(fds[jf], sym, w);
            for (std::size_t it = t0; it < t1; ++it) {
                std::span<const cdouble> row(products.data() + (it - t0) * n, n);
                out[it * fds.size() + jf] = std::abs(kernels::dot_conj(row, w)) / fs;
            }
        }
    }
    return out;
}

}  // namespace

AmbiguityGrid ambiguity_grid(const WaveformParams& params, SymbolShape shape,
                             std::span<const double> tau_axis, std::span<const double> fd_axis,
                             AmbiguityMethod method) {
    params.validate();
    require_axis(tau_axis, "delay");
    require_axis(fd_axis, "Doppler");

    AmbiguityGrid g;
    g.tau_axis.assign(tau_axis.begin(), tau_axis.end());
    g.fd_axis.assign(fd_axis.begin(), fd_axis.end());

    double origin = 0.0;
    if (method == AmbiguityMethod::Numeric) {
        g.values = numeric_grid(params, shape, tau_axis, fd_axis);
        const double zero = 0.0;
        origin = numeric_grid(params, shape, {&zero, 1}, {&zero, 1}).front();
    } else {
        // VLFM is the conjugate waveform: chi_V(tau, fd) = conj(chi_tri(tau, -fd)).
        const double dsign = shape == SymbolShape::TriangleLFM ? 1.0 : -1.0;
        g.values.resize(tau_axis.size() * fd_axis.size());
        for (std::size_t i = 0; i < tau_axis.size(); ++i) {
            for (std::size_t j = 0; j < fd_axis.size(); ++j) {
                g.values[i * fd_axis.size() + j] =
                    std::abs(chi_triangle(params, tau_axis[i], dsign * fd_axis[j]));
            }
        }
        origin = std::abs(chi_triangle(params, 0.0, 0.0));
    }
    for (double& v : g.values) v /= origin;
    return g;
}

double resolution_from_cut(const AmbiguityGrid& grid, CutAxis axis) {
    if (grid.values.empty()) throw ResolutionUndefinedError("empty grid");
    const auto peak_it = std::max_element(grid.values.begin(), grid.values.end());
    const auto peak_idx = static_cast<std::size_t>(peak_it - grid.values.begin());
    const double peak = *peak_it;
    if (!(peak > 0.0)) throw ResolutionUndefinedError("grid has no peak");
    const std::size_t nf = grid.fd_axis.size();
    const std::size_t it = peak_idx / nf;
    const std::size_t jf = peak_idx % nf;
    if (grid.tau_axis[it] != 0.0 || grid.fd_axis[jf] != 0.0) {
        throw ResolutionUndefinedError("peak is not at the origin of the grid");
    }

    const bool delay = axis == CutAxis::Delay;
    const std::vector<double>& coord = delay ? grid.tau_axis : grid.fd_axis;
    const std::size_t len = coord.size();
    const std::size_t center = delay ? it : jf;
    auto value = [&](std::size_t k) { return delay ? grid.at(k, jf) : grid.at(it, k); };
    const double level = peak / std::sqrt(2.0);

    auto crossing = [&](int dir) {
        std::size_t k = center;
        for (;;) {
            if ((dir < 0 && k == 0) || (dir > 0 && k + 1 >= len)) {
                throw ResolutionUndefinedError("main lobe extends past the grid edge");
            }
            const std::size_t next = dir < 0 ? k - 1 : k + 1;
            const double v0 = value(k), v1 = value(next);
            if (v1 < level) {
                if (k == center) {
                    throw ResolutionUndefinedError("main lobe not resolved by the grid");
                }
                const double frac = (v0 - level) / (v0 - v1);
                return coord[k] + frac * (coord[next] - coord[k]);
            }
            k = next;
        }
    };
    const double hi = crossing(+1);
    const double lo = crossing(-1);
    return hi - lo;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    if (n == 0) return {};
    if (n == 1) return {lo};
    std::vector<double> v(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        double x = lo + static_cast<double>(i) * step;
        if (std::abs(x) < 1e-9 * std::abs(step)) x = 0.0;
        v[i] = x;
    }
    v.back() = hi;
    return v;
}

BenchmarkAxes benchmark_axes(const WaveformParams& params) {
    const double T = params.t_half;
    return {linspace(-1.8 * T, 1.8 * T, 241), linspace(-4.0 / T, 4.0 / T, 241)};
}

}  // namespace chirpjrc

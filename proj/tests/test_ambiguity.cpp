// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "chirpjrc/ambiguity.hpp"
#include "chirpjrc/error.hpp"

using namespace chirpjrc;

namespace {

constexpr double kPi = std::numbers::pi;

// Fixed 61-point Gauss-Kronrod on `pieces` equal panels of [a, b].
double integrate(const std::function<double(double)>& f, double a, double b, int pieces) {
    using boost::math::quadrature::gauss_kronrod;
    double sum = 0.0;
    const double h = (b - a) / pieces;
    for (int k = 0; k < pieces; ++k) {
        sum += gauss_kronrod<double, 61>::integrate(f, a + k * h, a + (k + 1) * h, 0);
    }
    return sum;
}

FresnelPair fresnel_oracle(double x) {
    const int pieces = std::max(1, static_cast<int>(std::abs(x) * std::abs(x) * 2) + 4);
    return {integrate([](double u) { return std::cos(kPi * u * u / 2); }, 0.0, x, pieces),
            integrate([](double u) { return std::sin(kPi * u * u / 2); }, 0.0, x, pieces)};
}

// Continuous symbol halves for the triangle shape.
cdouble up_half(const WaveformParams& p, double t) {
    if (t < -p.t_half || t >= 0.0) return {};
    return std::polar(1.0 / std::sqrt(2.0 * p.t_half), kPi * p.mu() * t * t);
}
cdouble down_half(const WaveformParams& p, double t) {
    if (t < 0.0 || t >= p.t_half) return {};
    return std::polar(1.0 / std::sqrt(2.0 * p.t_half), -kPi * p.mu() * t * t);
}

// Brute-force int a(t) conj(b(t - tau)) e^{j 2 pi fd t} dt over [-2T, 2T].
cdouble cross_oracle(const WaveformParams& p, const std::function<cdouble(double)>& a,
                     const std::function<cdouble(double)>& b, double tau, double fd) {
    auto f = [&](double t) { return a(t) * std::conj(b(t - tau)) * std::polar(1.0, 2 * kPi * fd * t); };
    // Panels aligned to the support edges so each panel sees a smooth integrand.
    std::vector<double> edges{-p.t_half, 0.0, p.t_half, -p.t_half + tau, tau, p.t_half + tau};
    std::sort(edges.begin(), edges.end());
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        if (!(edges[k + 1] > edges[k])) continue;
        re += integrate([&](double t) { return f(t).real(); }, edges[k], edges[k + 1], 400);
        im += integrate([&](double t) { return f(t).imag(); }, edges[k], edges[k + 1], 400);
    }
    return {re, im};
}

WaveformParams small_params() {
    WaveformParams p;
    p.f0 = 340e9;
    p.delta_f = 2e6;
    p.t_half = 10e-6;
    p.fs = 2.5e6;
    return p;
}

}  // namespace

TEST_CASE("fresnel against quadrature") {
    CHECK(fresnel(0.0).c_val == 0.0);
    CHECK(fresnel(0.0).s_val == 0.0);
    for (double x : {0.3, 1.0, 1.5, 1.6, 1.61, 2.0, 3.7, 6.0, 9.99, -0.7, -4.2}) {
        CAPTURE(x);
        const FresnelPair got = fresnel(x);
        const FresnelPair want = fresnel_oracle(x);
        CHECK(std::abs(got.c_val - want.c_val) <= 1e-8);
        CHECK(std::abs(got.s_val - want.s_val) <= 1e-8);
    }
    const FresnelPair far = fresnel(50.0);
    CHECK(std::abs(far.c_val - 0.5) < 1e-2);
    CHECK(std::abs(far.s_val - 0.5) < 1e-2);
}

TEST_CASE("fresnel symmetry, bounds and domain") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    for (int i = 0; i < 2000; ++i) {
        const double x = u(rng);
        const FresnelPair a = fresnel(x), b = fresnel(-x);
        CHECK(a.c_val == -b.c_val);
        CHECK(a.s_val == -b.s_val);
        CHECK(std::abs(a.c_val) <= 0.8);
        CHECK(std::abs(a.s_val) <= 0.8);
    }
    CHECK_THROWS_AS((void)fresnel(std::numeric_limits<double>::infinity()), ParameterError);
    CHECK_THROWS_AS((void)fresnel(std::numeric_limits<double>::quiet_NaN()), ParameterError);
}

TEST_CASE("closed-form terms against brute-force integrals") {
    const auto p = WaveformParams::desk();
    const double T = p.t_half;
    auto up = [&](double t) { return up_half(p, t); };
    auto down = [&](double t) { return down_half(p, t); };

    CHECK(std::abs(chi_u11(p, 0.0, 0.0) - 0.5) < 0.02);
    CHECK(chi_u12(p, 2.0 * T + 1e-9, 0.0) == cdouble{});
    CHECK(chi_u11(p, 1.5 * T, 0.0) == cdouble{});

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> utau(-0.95, 0.95), ufd(-4.0, 4.0), upos(0.02, 1.98);
    for (int i = 0; i < 12; ++i) {
        const double tau = utau(rng) * T;
        const double fd = ufd(rng) / T;
        CAPTURE(tau);
        CAPTURE(fd);
        CHECK(std::abs(chi_u11(p, tau, fd) - cross_oracle(p, up, up, tau, fd)) < 1e-8);
        CHECK(std::abs(chi_u22(p, tau, fd) - cross_oracle(p, down, down, tau, fd)) < 1e-8);
        const double tau12 = upos(rng) * T;
        CHECK(std::abs(chi_u12(p, tau12, fd) - cross_oracle(p, down, up, tau12, fd)) < 1e-8);
    }
    // The spec's spot check, far tighter than its 0.05.
    CHECK(std::abs(chi_u22(p, 0.1 * T, 0.0) - cross_oracle(p, down, down, 0.1 * T, 0.0)) < 1e-8);
}

TEST_CASE("triangle ambiguity equals the full-symbol integral") {
    const auto p = WaveformParams::desk();
    const double T = p.t_half;
    auto sym = [&](double t) { return up_half(p, t) + down_half(p, t); };
    CHECK(std::abs(std::abs(chi_triangle(p, 0.0, 0.0)) - 1.0) < 1e-12);
    const std::pair<double, double> points[] = {{0.5 * T, 0.0}, {0.0, 2.0 / T},  {-0.3 * T, 1.7 / T},
                                                {1.2 * T, -0.6 / T}, {-1.7 * T, 3.1 / T}, {0.9 * T, 0.2 / T}};
    for (const auto& [tau, fd] : points) {
        CAPTURE(tau);
        CAPTURE(fd);
        const cdouble want = cross_oracle(p, sym, sym, tau, fd);
        CHECK(std::abs(chi_triangle(p, tau, fd) - want) < 1e-8);
        CHECK(std::abs(std::abs(chi_numeric(p, SymbolShape::TriangleLFM, tau, fd)) - std::abs(want)) < 0.05);
    }
}

TEST_CASE("chi_numeric spot values") {
    const auto p = WaveformParams::desk();
    const double T = p.t_half;
    CHECK(std::abs(std::abs(chi_numeric(p, SymbolShape::TriangleLFM, 0.0, 0.0)) - 1.0) < 1e-6);
    CHECK(chi_numeric(p, SymbolShape::TriangleLFM, 2.0 * T, 1e5) == cdouble{});
    CHECK(chi_numeric(p, SymbolShape::VLFM, -2.5 * T, 0.0) == cdouble{});
    // |x|^2 is flat, so chi(0, fd) = sinc(2 fd T), which vanishes at fd = 1/(2T).
    auto sym = [&](double t) { return up_half(p, t) + down_half(p, t); };
    const double fd = 1.0 / (2.0 * T);
    const cdouble want = cross_oracle(p, sym, sym, 0.0, fd);
    CHECK(std::abs(std::abs(chi_numeric(p, SymbolShape::TriangleLFM, 0.0, fd)) - std::abs(want)) < 1e-6);
}

TEST_CASE("grids: normalization, peak and V-LFM mirror") {
    const auto p = WaveformParams::desk();
    const double zero = 0.0;
    const auto one = ambiguity_grid(p, SymbolShape::TriangleLFM, {&zero, 1}, {&zero, 1},
                                    AmbiguityMethod::Numeric);
    CHECK(one.values.size() == 1);
    CHECK(one.values[0] == doctest::Approx(1.0).epsilon(1e-12));

    const double T = p.t_half;
    const auto taus = linspace(-1.8 * T, 1.8 * T, 31);
    const auto fds = linspace(-4.0 / T, 4.0 / T, 21);
    std::vector<double> neg(fds.rbegin(), fds.rend());
    for (double& f : neg) f = -f;
    for (auto method : {AmbiguityMethod::Numeric, AmbiguityMethod::Analytic}) {
        const auto tri = ambiguity_grid(p, SymbolShape::TriangleLFM, taus, fds, method);
        const auto v = ambiguity_grid(p, SymbolShape::VLFM, taus, neg, method);
        CHECK(tri.values.size() == taus.size() * fds.size());
        double peak = 0.0, mirror = 0.0;
        for (std::size_t i = 0; i < taus.size(); ++i) {
            for (std::size_t j = 0; j < fds.size(); ++j) {
                peak = std::max(peak, tri.at(i, j));
                mirror = std::max(mirror, std::abs(tri.at(i, j) - v.at(i, fds.size() - 1 - j)));
            }
        }
        CHECK(peak <= 1.0 + 1e-6);
        CHECK(mirror <= 1e-6);
    }

    const std::vector<double> empty;
    const std::vector<double> bad{0.0, 0.0};
    CHECK_THROWS_AS((void)ambiguity_grid(p, SymbolShape::TriangleLFM, empty, fds, AmbiguityMethod::Analytic), ParameterError);
    CHECK_THROWS_AS((void)ambiguity_grid(p, SymbolShape::TriangleLFM, taus, bad, AmbiguityMethod::Numeric), ParameterError);
}

TEST_CASE("resolution from computed cuts") {
    const auto p = WaveformParams::desk();
    const double T = p.t_half;
    const double zero = 0.0;
    const auto taus = linspace(-4.0 / p.delta_f, 4.0 / p.delta_f, 161);
    const auto delay_cut = ambiguity_grid(p, SymbolShape::TriangleLFM, taus, {&zero, 1},
                                          AmbiguityMethod::Numeric);
    const double dtau = resolution_from_cut(delay_cut, CutAxis::Delay);
    CHECK(dtau == doctest::Approx(1.0 / p.delta_f).epsilon(0.2));
    // Range resolution c / (2 delta_f) at full scale.
    CHECK(kSpeedOfLight / (2.0 * 288e6) == doctest::Approx(0.52).epsilon(0.01));

    const auto fds = linspace(-2.0 / T, 2.0 / T, 161);
    const auto doppler_cut = ambiguity_grid(p, SymbolShape::TriangleLFM, {&zero, 1}, fds,
                                            AmbiguityMethod::Numeric);
    CHECK(resolution_from_cut(doppler_cut, CutAxis::Doppler) ==
          doctest::Approx(1.0 / (2.0 * T)).epsilon(0.2));
}

TEST_CASE("resolution_from_cut on synthetic cuts") {
    // |sinc(x / w0)| has a -3 dB full width of 0.8859 w0.
    const double w0 = 2.0;
    AmbiguityGrid g;
    g.tau_axis = linspace(-10.0, 10.0, 401);
    g.fd_axis = {0.0};
    for (double x : g.tau_axis) {
        const double a = kPi * x / w0;
        g.values.push_back(x == 0.0 ? 1.0 : std::abs(std::sin(a) / a));
    }
    const double step = g.tau_axis[1] - g.tau_axis[0];
    CHECK(std::abs(resolution_from_cut(g, CutAxis::Delay) - 0.885893 * w0) < step);

    AmbiguityGrid narrow = g;
    narrow.tau_axis = linspace(-1.0, 1.0, 5);  // main lobe wider than the grid
    narrow.values = {0.9, 0.95, 1.0, 0.95, 0.9};
    CHECK_THROWS_AS((void)resolution_from_cut(narrow, CutAxis::Delay), ResolutionUndefinedError);

    AmbiguityGrid coarse = narrow;
    coarse.values = {0.1, 0.2, 1.0, 0.2, 0.1};  // falls below -3 dB within one cell
    CHECK_THROWS_AS((void)resolution_from_cut(coarse, CutAxis::Delay), ResolutionUndefinedError);

    AmbiguityGrid off = narrow;
    off.values = {0.1, 1.0, 0.5, 0.2, 0.1};  // peak not at the origin
    CHECK_THROWS_AS((void)resolution_from_cut(off, CutAxis::Delay), ResolutionUndefinedError);
}

TEST_CASE("ambiguity volume is the squared symbol energy") {
    const auto p = small_params();
    const double T = p.t_half;
    // Delay on the sample lattice over (-2T, 2T); Doppler over one full period of the sampled spectrum.
    std::vector<double> taus, fds;
    for (int k = -50; k < 50; ++k) taus.push_back(k / p.fs);
    const double dfd = 1.0 / (8.0 * T);
    for (double f = -p.fs / 2; f < p.fs / 2 - 1e-6; f += dfd) fds.push_back(f);
    const auto g = ambiguity_grid(p, SymbolShape::TriangleLFM, taus, fds, AmbiguityMethod::Numeric);
    double vol = 0.0;
    for (double v : g.values) vol += v * v;
    vol *= (1.0 / p.fs) * dfd;
    CHECK(vol == doctest::Approx(1.0).epsilon(0.1));
}

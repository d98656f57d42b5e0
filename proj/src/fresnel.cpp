// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "chirpjrc/ambiguity.hpp"
#include "chirpjrc/error.hpp"

namespace chirpjrc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesLimit = 1.6;
constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 500;

FresnelPair series(double x) {
    // C = sum (-1)^k (pi/2)^{2k} x^{4k+1} / ((2k)! (4k+1)),
    // S = sum (-1)^k (pi/2)^{2k+1} x^{4k+3} / ((2k+1)! (4k+3)).
    // Terms alternate between the two sums.
    const double fact = 0.5 * kPi * x * x;
    double sum_c = x;
    double sum_s = 0.0;
    double term = x;
    double sign = 1.0;
    bool odd = true;
    double n = 3.0;
    for (int k = 1; k < kMaxIter; ++k) {
        term *= fact / k;
        const double contrib = sign * term / n;
        if (odd) {
            sum_s += contrib;
            sign = -sign;
        } else {
            sum_c += contrib;
        }
        if (term < kEps * std::max(std::abs(sum_c), std::abs(sum_s))) break;
        odd = !odd;
        n += 2.0;
    }
    return {sum_c, sum_s};
}

FresnelPair continued_fraction(double x) {
    // Modified Lentz evaluation of the erfc continued fraction:
    // C + jS = (1 + j)/2 * [1 - e^{j pi x^2 / 2} h (x - j x)] with h from the CF.
    using cd = std::complex<double>;
    cd b{1.0, -kPi * x * x};
    cd cc{1.0 / kTiny, 0.0};
    cd d = 1.0 / b;
    cd h = d;
    double n = -1.0;
    for (int k = 2; k < kMaxIter; ++k) {
        n += 2.0;
        const double a = -n * (n + 1.0);
        b += 4.0;
        d = 1.0 / (a * d + b);
        cc = b + a / cc;
        const cd del = cc * d;
        h *= del;
        if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < kEps) break;
    }
    h *= cd{x, -x};
    const double half_arg = 0.5 * kPi * x * x;
    const cd cs = cd{0.5, 0.5} * (1.0 - cd{std::cos(half_arg), std::sin(half_arg)} * h);
    return {cs.real(), cs.imag()};
}

}  // namespace

FresnelPair fresnel(double x) {
    if (!std::isfinite(x)) throw ParameterError("fresnel argument must be finite");
    const double ax = std::abs(x);
    FresnelPair r;
    if (ax < std::sqrt(std::numeric_limits<double>::min())) {
        r = {ax, 0.0};
    } else if (ax <= kSeriesLimit) {
        r = series(ax);
    } else {
        r = continued_fraction(ax);
    }
    if (x < 0.0) {
        r.c_val = -r.c_val;
        r.s_val = -r.s_val;
    }
    return r;
}

}  // namespace chirpjrc

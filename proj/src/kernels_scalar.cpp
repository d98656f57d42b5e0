// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#include "chirpjrc/kernels.hpp"

namespace chirpjrc::kernels::scalar {

void mul_conj(const cdouble* a, const cdouble* b, cdouble* out, std::size_t n) noexcept {
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        out[i] = {ar * br + ai * bi, ai * br - ar * bi};
    }
}

cdouble dot_conj(const cdouble* a, const cdouble* b, std::size_t n) noexcept {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br + ai * bi;
        im += ai * br - ar * bi;
    }
    return {re, im};
}

double energy(const cdouble* a, std::size_t n) noexcept {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    }
    return acc;
}

cdouble dot_real(const double* taps, const cdouble* x, std::size_t n) noexcept {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += taps[i] * x[i].real();
        im += taps[i] * x[i].imag();
    }
    return {re, im};
}

}  // namespace chirpjrc::kernels::scalar

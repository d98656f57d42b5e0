// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

// AVX2+FMA variants. Functions carry a target attribute instead of the whole
// file being built with -mavx2, so no inline library code gets compiled for
// AVX2 and then shared with the scalar path by the linker.

#include "chirpjrc/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define CHIRPJRC_HAVE_X86 1
#endif

namespace chirpjrc::kernels::avx2 {

#if CHIRPJRC_HAVE_X86

#define CHIRPJRC_AVX2 __attribute__((target("avx2,fma")))

namespace {

// Two complex doubles per register: [re0 im0 re1 im1].
CHIRPJRC_AVX2 inline double hsum_even(__m256d v) {
    alignas(32) double t[4];
    _mm256_store_pd(t, v);
    return t[0] + t[2];
}

CHIRPJRC_AVX2 inline double hsum_odd(__m256d v) {
    alignas(32) double t[4];
    _mm256_store_pd(t, v);
    return t[1] + t[3];
}

}  // namespace

CHIRPJRC_AVX2 void mul_conj(const cdouble* a, const cdouble* b, cdouble* out,
                            std::size_t n) noexcept {
    const auto* pa = reinterpret_cast<const double*>(a);
    const auto* pb = reinterpret_cast<const double*>(b);
    auto* po = reinterpret_cast<double*>(out);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        const __m256d b_re = _mm256_movedup_pd(vb);
        const __m256d b_im = _mm256_permute_pd(vb, 0xF);
        const __m256d a_sw = _mm256_permute_pd(va, 0x5);
        // even lanes: ar*br + ai*bi, odd lanes: ai*br - ar*bi
        const __m256d r = _mm256_fmsubadd_pd(va, b_re, _mm256_mul_pd(a_sw, b_im));
        _mm256_storeu_pd(po + 2 * i, r);
    }
    scalar::mul_conj(a + i, b + i, out + i, n - i);
}

CHIRPJRC_AVX2 cdouble dot_conj(const cdouble* a, const cdouble* b, std::size_t n) noexcept {
    const auto* pa = reinterpret_cast<const double*>(a);
    const auto* pb = reinterpret_cast<const double*>(b);
    __m256d acc_r0 = _mm256_setzero_pd(), acc_s0 = _mm256_setzero_pd();
    __m256d acc_r1 = _mm256_setzero_pd(), acc_s1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d va0 = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vb0 = _mm256_loadu_pd(pb + 2 * i);
        const __m256d va1 = _mm256_loadu_pd(pa + 2 * i + 4);
        const __m256d vb1 = _mm256_loadu_pd(pb + 2 * i + 4);
        acc_r0 = _mm256_fmadd_pd(va0, _mm256_movedup_pd(vb0), acc_r0);
        acc_s0 = _mm256_fmadd_pd(_mm256_permute_pd(va0, 0x5), _mm256_permute_pd(vb0, 0xF), acc_s0);
        acc_r1 = _mm256_fmadd_pd(va1, _mm256_movedup_pd(vb1), acc_r1);
        acc_s1 = _mm256_fmadd_pd(_mm256_permute_pd(va1, 0x5), _mm256_permute_pd(vb1, 0xF), acc_s1);
    }
    const __m256d acc_r = _mm256_add_pd(acc_r0, acc_r1);
    const __m256d acc_s = _mm256_add_pd(acc_s0, acc_s1);
    // acc_r = [ar*br, ai*br], acc_s = [ai*bi, ar*bi]
    const double re = hsum_even(acc_r) + hsum_even(acc_s);
    const double im = hsum_odd(acc_r) - hsum_odd(acc_s);
    const cdouble tail = scalar::dot_conj(a + i, b + i, n - i);
    return {re + tail.real(), im + tail.imag()};
}

CHIRPJRC_AVX2 double energy(const cdouble* a, std::size_t n) noexcept {
    const auto* pa = reinterpret_cast<const double*>(a);
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v0 = _mm256_loadu_pd(pa + 2 * i);
        const __m256d v1 = _mm256_loadu_pd(pa + 2 * i + 4);
        acc0 = _mm256_fmadd_pd(v0, v0, acc0);
        acc1 = _mm256_fmadd_pd(v1, v1, acc1);
    }
    const __m256d acc = _mm256_add_pd(acc0, acc1);
    return hsum_even(acc) + hsum_odd(acc) + scalar::energy(a + i, n - i);
}

CHIRPJRC_AVX2 cdouble dot_real(const double* taps, const cdouble* x, std::size_t n) noexcept {
    const auto* px = reinterpret_cast<const double*>(x);
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        // [t0 t0 t1 t1] and [t2 t2 t3 t3]
        const __m256d t = _mm256_loadu_pd(taps + i);
        const __m256d t01 = _mm256_permute4x64_pd(t, 0x50);
        const __m256d t23 = _mm256_permute4x64_pd(t, 0xFA);
        acc0 = _mm256_fmadd_pd(t01, _mm256_loadu_pd(px + 2 * i), acc0);
        acc1 = _mm256_fmadd_pd(t23, _mm256_loadu_pd(px + 2 * i + 4), acc1);
    }
    const __m256d acc = _mm256_add_pd(acc0, acc1);
    const cdouble tail = scalar::dot_real(taps + i, x + i, n - i);
    return {hsum_even(acc) + tail.real(), hsum_odd(acc) + tail.imag()};
}

#else  // non-x86: forward to the reference kernels

void mul_conj(const cdouble* a, const cdouble* b, cdouble* out, std::size_t n) noexcept {
    scalar::mul_conj(a, b, out, n);
}
cdouble dot_conj(const cdouble* a, const cdouble* b, std::size_t n) noexcept {
    return scalar::dot_conj(a, b, n);
}
double energy(const cdouble* a, std::size_t n) noexcept { return scalar::energy(a, n); }
cdouble dot_real(const double* taps, const cdouble* x, std::size_t n) noexcept {
    return scalar::dot_real(taps, x, n);
}

#endif

}  // namespace chirpjrc::kernels::avx2

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#pragma once

// Data-parallel inner loops shared by the receivers and the ambiguity engine.
//
// Every kernel has a portable scalar reference implementation and, where the
// CPU supports it, an AVX2+FMA variant. The variant is chosen once at runtime
// (CPUID) and can be forced with the CHIRPJRC_KERNELS environment variable
// ("scalar" or "avx2") or with set_backend(). Variants are equivalence-tested
// against the scalar reference; they differ only by floating-point
// reassociation inside the reductions.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace chirpjrc::kernels {

using cdouble = std::complex<double>;

enum class Backend { Scalar, Avx2 };

/// Backend currently used by the dispatching entry points.
[[nodiscard]] Backend active_backend() noexcept;
/// Force a backend. Returns false (and changes nothing) if the CPU lacks it.
bool set_backend(Backend b) noexcept;
[[nodiscard]] bool cpu_supports(Backend b) noexcept;
[[nodiscard]] std::string_view backend_name(Backend b) noexcept;

// Dispatching entry points. Spans passed together must have equal length.

/// out[n] = a[n] * conj(b[n])
void mul_conj(std::span<const cdouble> a, std::span<const cdouble> b, std::span<cdouble> out);
/// sum_n a[n] * conj(b[n])
[[nodiscard]] cdouble dot_conj(std::span<const cdouble> a, std::span<const cdouble> b);
/// sum_n |a[n]|^2
[[nodiscard]] double energy(std::span<const cdouble> a);
/// sum_n taps[k] * x[k]  (real taps, complex data)
[[nodiscard]] cdouble dot_real(std::span<const double> taps, std::span<const cdouble> x);

// Explicit variants, exposed for equivalence tests and benchmarks.
namespace scalar {
void mul_conj(const cdouble* a, const cdouble* b, cdouble* out, std::size_t n) noexcept;
cdouble dot_conj(const cdouble* a, const cdouble* b, std::size_t n) noexcept;
double energy(const cdouble* a, std::size_t n) noexcept;
cdouble dot_real(const double* taps, const cdouble* x, std::size_t n) noexcept;
}  // namespace scalar

namespace avx2 {
void mul_conj(const cdouble* a, const cdouble* b, cdouble* out, std::size_t n) noexcept;
cdouble dot_conj(const cdouble* a, const cdouble* b, std::size_t n) noexcept;
double energy(const cdouble* a, std::size_t n) noexcept;
cdouble dot_real(const double* taps, const cdouble* x, std::size_t n) noexcept;
}  // namespace avx2

}  // namespace chirpjrc::kernels

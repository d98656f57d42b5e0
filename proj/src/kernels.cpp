// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#include "chirpjrc/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "chirpjrc/error.hpp"

namespace chirpjrc::kernels {

namespace {

Backend detect() noexcept {
    const Backend best = cpu_supports(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
    if (const char* env = std::getenv("CHIRPJRC_KERNELS")) {
        const std::string v{env};
        if (v == "scalar") return Backend::Scalar;
        if (v == "avx2" && best == Backend::Avx2) return Backend::Avx2;
    }
    return best;
}

std::atomic<Backend>& current() noexcept {
    static std::atomic<Backend> b{detect()};
    return b;
}

void require_same(std::size_t a, std::size_t b) {
    if (a != b) throw ParameterError("kernel operands differ in length");
}

}  // namespace

bool cpu_supports(Backend b) noexcept {
    switch (b) {
        case Backend::Scalar:
            return true;
        case Backend::Avx2:
#if defined(__x86_64__) || defined(__i386__)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
    }
    return false;
}

Backend active_backend() noexcept { return current().load(std::memory_order_relaxed); }

bool set_backend(Backend b) noexcept {
    if (!cpu_supports(b)) return false;
    current().store(b, std::memory_order_relaxed);
    return true;
}

std::string_view backend_name(Backend b) noexcept {
    return b == Backend::Avx2 ? "avx2" : "scalar";
}

void mul_conj(std::span<const cdouble> a, std::span<const cdouble> b, std::span<cdouble> out) {
    require_same(a.size(), b.size());
    require_same(a.size(), out.size());
    if (active_backend() == Backend::Avx2) {
        avx2::mul_conj(a.data(), b.data(), out.data(), a.size());
    } else {
        scalar::mul_conj(a.data(), b.data(), out.data(), a.size());
    }
}

cdouble dot_conj(std::span<const cdouble> a, std::span<const cdouble> b) {
    require_same(a.size(), b.size());
    return active_backend() == Backend::Avx2 ? avx2::dot_conj(a.data(), b.data(), a.size())
                                             : scalar::dot_conj(a.data(), b.data(), a.size());
}

double energy(std::span<const cdouble> a) {
    return active_backend() == Backend::Avx2 ? avx2::energy(a.data(), a.size())
                                             : scalar::energy(a.data(), a.size());
}

cdouble dot_real(std::span<const double> taps, std::span<const cdouble> x) {
    require_same(taps.size(), x.size());
    return active_backend() == Backend::Avx2 ? avx2::dot_real(taps.data(), x.data(), x.size())
                                             : scalar::dot_real(taps.data(), x.data(), x.size());
}

}  // namespace chirpjrc::kernels

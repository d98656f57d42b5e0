// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#include "chirpjrc/comms_rx.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chirpjrc/error.hpp"
#include "chirpjrc/fft.hpp"
#include "chirpjrc/kernels.hpp"

namespace chirpjrc {

namespace {

std::vector<cdouble> template_spectrum(const ComplexSignal& pulse, std::size_t nfft) {
    std::vector<cdouble> buf(nfft, cdouble{});
    std::copy(pulse.samples().begin(), pulse.samples().end(), buf.begin());
    fft::forward(buf);
    return buf;
}

double correlation_peak(std::span<const cdouble> rx_spec, std::span<const cdouble> tmpl_spec,
                        std::vector<cdouble>& scratch) {
    kernels::mul_conj(rx_spec, tmpl_spec, scratch);
    fft::inverse(scratch);
    double peak = 0.0;
    for (const cdouble& v : scratch) peak = std::max(peak, std::norm(v));
    return std::sqrt(peak) / static_cast<double>(scratch.size());
}

}  // namespace

std::string_view scheme_name(CommsScheme s) noexcept {
    return s == CommsScheme::Proposed ? "proposed" : "lfm_mf";
}

CommsScheme parse_scheme(std::string_view name) {
    if (name == "proposed") return CommsScheme::Proposed;
    if (name == "lfm_mf") return CommsScheme::LfmMf;
    throw ParameterError("unknown comms scheme '" + std::string(name) + "'");
}

std::size_t samples_per_bit(CommsScheme s, const WaveformParams& params) {
    (void)s;
    return params.samples_per_symbol();
}

Demodulator::Demodulator(const WaveformParams& params, CommsScheme scheme) : scheme_(scheme) {
    params.validate();
    if (scheme == CommsScheme::Proposed) {
        const ComplexSignal one = gen_symbol(params, SymbolShape::TriangleLFM);
        const ComplexSignal zero = gen_symbol(params, SymbolShape::VLFM);
        n_ = one.size();
        fs_ = one.fs();
        one_.assign(one.samples().begin(), one.samples().end());
        zero_.assign(zero.samples().begin(), zero.samples().end());
    } else {
        const ComplexSignal up = gen_lfm_pulse(params, ChirpDirection::Up);
        const ComplexSignal down = gen_lfm_pulse(params, ChirpDirection::Down);
        n_ = up.size();
        fs_ = up.fs();
        one_ = template_spectrum(up, 2 * n_);
        zero_ = template_spectrum(down, 2 * n_);
    }
}

DecisionStatistics Demodulator::decide(std::span<const cdouble> rx) const {
    if (rx.size() != n_) throw ParameterError("symbol length does not match the scheme");
    DecisionStatistics d;
    if (scheme_ == CommsScheme::Proposed) {
        d.branch_tri = std::abs(kernels::dot_conj(rx, one_)) / fs_;
        d.branch_v = std::abs(kernels::dot_conj(rx, zero_)) / fs_;
    } else {
        std::vector<cdouble> spec(2 * n_, cdouble{});
        std::copy(rx.begin(), rx.end(), spec.begin());
        fft::forward(spec);
        std::vector<cdouble> scratch(spec.size());
        d.branch_tri = correlation_peak(spec, one_, scratch) / fs_;
        d.branch_v = correlation_peak(spec, zero_, scratch) / fs_;
    }
    d.decided_bit = d.branch_tri >= d.branch_v ? 1 : 0;
    return d;
}

DecisionStatistics demodulate_symbol(const ComplexSignal& rx, const WaveformParams& params) {
    if (!same_rate(rx.fs(), params.fs)) throw ParameterError("received symbol sample rate differs from params");
    return Demodulator(params, CommsScheme::Proposed).decide(rx.samples());
}

DecisionStatistics demodulate_symbol_lfm_mf(const ComplexSignal& rx, const WaveformParams& params) {
    if (!same_rate(rx.fs(), 2.0 * params.fs)) {
        throw ParameterError("baseline pulse must be sampled at twice the system rate");
    }
    return Demodulator(params, CommsScheme::LfmMf).decide(rx.samples());
}

std::vector<std::uint8_t> demodulate_stream(const ComplexSignal& rx, std::size_t n_bits,
                                            CommsScheme scheme, const WaveformParams& params,
                                            std::vector<DecisionStatistics>* stats) {
    const Demodulator demod(params, scheme);
    const std::size_t n = demod.symbol_samples();
    if (!same_rate(rx.fs(), demod.sample_rate())) throw ParameterError("stream sample rate differs from the scheme");
    if (rx.size() != n * n_bits) throw ParameterError("stream length does not match the bit count");
    std::vector<std::uint8_t> bits(n_bits);
    if (stats != nullptr) stats->resize(n_bits);
    for (std::size_t i = 0; i < n_bits; ++i) {
        const DecisionStatistics d = demod.decide(rx.samples().subspan(i * n, n));
        bits[i] = d.decided_bit;
        if (stats != nullptr) (*stats)[i] = d;
    }
    return bits;
}

}  // namespace chirpjrc

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The chirpjrc Authors

#include "chirpjrc/radar_rx.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "chirpjrc/error.hpp"
#include "chirpjrc/kernels.hpp"

namespace chirpjrc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kTapsPerFactor = 16;
constexpr double kKaiserBeta = 8.0;

std::vector<double> lowpass_taps(std::size_t factor) {
    const std::size_t n = kTapsPerFactor * factor + 1;
    const double half = 0.5 * static_cast<double>(n - 1);
    const double inv_i0 = 1.0 / std::cyl_bessel_i(0.0, kKaiserBeta);
    std::vector<double> h(n);
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double x = (static_cast<double>(k) - half) / static_cast<double>(factor);
        const double sinc = x == 0.0 ? 1.0 : std::sin(kPi * x) / (kPi * x);
        const double r = (static_cast<double>(k) - half) / half;
        const double w = std::cyl_bessel_i(0.0, kKaiserBeta * std::sqrt(1.0 - r * r)) * inv_i0;
        h[k] = sinc * w;
        sum += h[k];
    }
    for (double& v : h) v /= sum;
    return h;
}

// Sample covariance of all length-L windows, R[i][j] = mean_k x[k+i] conj(x[k+j]),
// then forward-backward averaged.
Eigen::MatrixXcd smoothed_covariance(std::span<const cdouble> x, std::size_t L) {
    const std::size_t K = x.size() - L + 1;
    Eigen::MatrixXcd R(static_cast<Eigen::Index>(L), static_cast<Eigen::Index>(L));
    for (std::size_t d = 0; d < L; ++d) {
        // Walk down diagonal d by sliding the window one sample at a time.
        cdouble acc = kernels::dot_conj(x.subspan(0, K), x.subspan(d, K));
        for (std::size_t i = 0; i + d < L; ++i) {
            if (i > 0) {
                acc += x[K + i - 1] * std::conj(x[K + i - 1 + d]) -
                       x[i - 1] * std::conj(x[i - 1 + d]);
            }
            const auto r = static_cast<Eigen::Index>(i);
            const auto c = static_cast<Eigen::Index>(i + d);
            R(r, c) = acc;
            R(c, r) = std::conj(acc);
        }
    }
    R /= static_cast<double>(K);
    const auto n = static_cast<Eigen::Index>(L);
    Eigen::MatrixXcd fb(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            fb(i, j) = 0.5 * (R(i, j) + std::conj(R(n - 1 - i, n - 1 - j)));
        }
    }
    return fb;
}

std::vector<cdouble> polynomial_roots(const std::vector<cdouble>& coeffs) {
    // coeffs[k] multiplies z^k; strip leading zeros, then companion matrix.
    std::size_t deg = coeffs.size() - 1;
    while (deg > 0 && std::abs(coeffs[deg]) == 0.0) --deg;
    if (deg == 0) return {};
    const auto n = static_cast<Eigen::Index>(deg);
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        comp(i, n - 1) = -coeffs[static_cast<std::size_t>(i)] / coeffs[deg];
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
    if (solver.info() != Eigen::Success) throw EstimationError("polynomial root finding failed");
    std::vector<cdouble> roots(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) roots[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    return roots;
}

cdouble newton_polish(const std::vector<cdouble>& coeffs, cdouble z) {
    for (int it = 0; it < 3; ++it) {
        cdouble p = coeffs.back();
        cdouble dp{};
        for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
            dp = dp * z + p;
            p = p * z + coeffs[k];
        }
        if (std::abs(dp) == 0.0) break;
        const cdouble next = z - p / dp;
        if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
        // A double root (noiseless tone) converges slowly; never step far.
        if (std::abs(next - z) > 1e-3) break;
        z = next;
    }
    return z;
}

// Least-squares amplitudes of the candidate exponentials; index of the largest.
std::size_t strongest(std::span<const cdouble> x, const std::vector<double>& omegas) {
    const auto n = static_cast<Eigen::Index>(x.size());
    const auto m = static_cast<Eigen::Index>(omegas.size());
    Eigen::MatrixXcd A(n, m);
    Eigen::VectorXcd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        b(i) = x[static_cast<std::size_t>(i)];
        for (Eigen::Index k = 0; k < m; ++k) {
            A(i, k) = std::polar(1.0, omegas[static_cast<std::size_t>(k)] * static_cast<double>(i));
        }
    }
    const Eigen::VectorXcd amp = A.colPivHouseholderQr().solve(b);
    Eigen::Index best = 0;
    amp.cwiseAbs().maxCoeff(&best);
    return static_cast<std::size_t>(best);
}

struct BeatBands {
    double up_center = 0.0;    // rx * conj(ref) tone on an up-chirp segment
    double down_center = 0.0;  // ... on a down-chirp segment
    double half_width = 0.0;
    std::size_t lead_trim = 0;  // samples at input rate
};

BeatBands beat_bands(const WaveformParams& p, const ReceiverConfig& cfg) {
    const double fd_max = 2.0 * cfg.max_speed_mps / p.lambda();
    const double tau_max = 2.0 * cfg.max_range_m / kSpeedOfLight;
    const double mt_max = p.mu() * tau_max;
    BeatBands b;
    b.up_center = 0.5 * (fd_max - mt_max);
    b.down_center = 0.5 * (fd_max + mt_max);
    b.half_width = 0.5 * (fd_max + mt_max);
    b.lead_trim = static_cast<std::size_t>(std::ceil(tau_max * p.fs));
    return b;
}

// Dechirp one segment, shift the expected beat band to baseband, trim edge
// transients, decimate and run root-MUSIC.
SegmentDiagnostics process_segment(std::span<const cdouble> rx, std::span<const cdouble> ref,
                                   double fs, double center, const BeatBands& bands,
                                   const ReceiverConfig& cfg) {
    const std::size_t n = rx.size();
    const auto edge = static_cast<std::size_t>(std::ceil(cfg.edge_trim_fraction * static_cast<double>(n)));
    const std::size_t head = bands.lead_trim + edge;
    if (head + edge + 2 >= n) throw EstimationError("segment too short after edge trimming");
    const std::size_t keep = n - head - edge;

    std::vector<cdouble> mixed(keep);
    kernels::mul_conj(rx.subspan(head, keep), ref.subspan(head, keep), mixed);
    const double step = -2.0 * kPi * center / fs;
    for (std::size_t k = 0; k < keep; ++k) {
        mixed[k] *= std::polar(1.0, step * static_cast<double>(head + k));
    }
    const ComplexSignal base(std::move(mixed), fs, static_cast<double>(head) / fs);
    const ComplexSignal dec = decimate(base, cfg.decimation, bands.half_width);

    SegmentDiagnostics diag;
    diag.music = root_music(dec, 1, std::min(cfg.max_subarray, dec.size() / 3));
    diag.samples = dec.size();
    diag.signed_beat_hz = diag.music.frequency_hz + center;

    // Tone amplitude referenced to the segment's first input sample.
    const double w = 2.0 * kPi * diag.music.frequency_hz;
    cdouble acc{};
    for (std::size_t m = 0; m < dec.size(); ++m) {
        acc += dec[m] * std::polar(1.0, -w * dec.time(m));
    }
    diag.amplitude = acc / static_cast<double>(dec.size());
    return diag;
}

void require_window(const ComplexSignal& rx, const WaveformParams& params) {
    if (!same_rate(rx.fs(), params.fs)) throw ParameterError("received signal sample rate differs from params");
    if (rx.size() < params.samples_per_symbol()) {
        throw ParameterError("received signal shorter than one symbol");
    }
}

}  // namespace

ReceiverConfig ReceiverConfig::defaults_for(const WaveformParams& params) {
    ReceiverConfig cfg;
    const double fd_max = 2.0 * cfg.max_speed_mps / params.lambda();
    cfg.decimation = std::max<std::size_t>(1, static_cast<std::size_t>(params.fs / (2.0 * fd_max)));
    return cfg;
}

void ReceiverConfig::validate(const WaveformParams& params) const {
    if (decimation == 0) throw ParameterError("decimation factor must be >= 1");
    if (max_subarray < 2) throw ParameterError("subarray length must be >= 2");
    if (!(edge_trim_fraction >= 0.0 && edge_trim_fraction < 0.25)) {
        throw ParameterError("edge trim fraction must be in [0, 0.25)");
    }
    if (!(max_range_m > 0.0) || !(max_speed_mps > 0.0)) {
        throw ParameterError("scenario bounds must be positive");
    }
    if (decimation > 1) {
        const BeatBands b = beat_bands(params, *this);
        if (b.half_width >= 0.5 * params.fs / static_cast<double>(decimation)) {
            throw ParameterError("decimation factor aliases the expected beat band");
        }
    }
}

ComplexSignal dechirp(const ComplexSignal& rx, const ComplexSignal& ref) {
    if (!same_rate(rx.fs(), ref.fs())) throw ParameterError("dechirp inputs differ in sample rate");
    if (rx.size() != ref.size()) throw ParameterError("dechirp inputs differ in length");
    std::vector<cdouble> out(rx.size());
    kernels::mul_conj(rx.samples(), ref.samples(), out);
    return {std::move(out), rx.fs(), rx.t_start()};
}

ComplexSignal decimate(const ComplexSignal& sig, std::size_t factor, double max_tone_hz) {
    if (factor == 0) throw ParameterError("decimation factor must be >= 1");
    if (factor == 1) return sig;
    const double fs_out = sig.fs() / static_cast<double>(factor);
    if (!(std::abs(max_tone_hz) < 0.5 * fs_out)) {
        throw ParameterError("decimated Nyquist frequency does not exceed the maximum tone");
    }
    const std::vector<double> taps = lowpass_taps(factor);
    const std::size_t half = taps.size() / 2;
    if (sig.size() < taps.size() + factor) {
        throw ParameterError("signal too short for the decimation filter");
    }
    const std::size_t first = (half + factor - 1) / factor;  // first fully-overlapped output
    const std::size_t last = (sig.size() - 1 - half) / factor;
    std::vector<cdouble> out(last - first + 1);
    const auto x = sig.samples();
    for (std::size_t m = first; m <= last; ++m) {
        out[m - first] = kernels::dot_real(taps, x.subspan(m * factor - half, taps.size()));
    }
    return {std::move(out), fs_out, sig.time(first * factor)};
}

RootMusicResult root_music(const ComplexSignal& sig, std::size_t model_order, std::size_t subarray) {
    const std::size_t n = sig.size();
    if (model_order == 0) throw ParameterError("model order must be >= 1");
    const std::size_t L = subarray == 0 ? std::min<std::size_t>(64, n / 3) : subarray;
    if (L < 2 || n < 3 * L) throw ParameterError("signal must span at least 3 subarray lengths");
    if (model_order >= L) throw ParameterError("model order must be below the subarray length");

    const Eigen::MatrixXcd R = smoothed_covariance(sig.samples(), L);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(R);
    if (eig.info() != Eigen::Success) throw EstimationError("covariance eigen-decomposition failed");
    const Eigen::VectorXd& lambda = eig.eigenvalues();  // ascending
    const auto Li = static_cast<Eigen::Index>(L);
    const auto M = static_cast<Eigen::Index>(model_order);
    const double top = lambda(Li - 1);
    if (!(top > 0.0) || !std::isfinite(top) || lambda(Li - M) <= 1e-12 * top) {
        throw EstimationError("covariance rank below the model order");
    }
    const Eigen::MatrixXcd signal = eig.eigenvectors().rightCols(M);
    const Eigen::MatrixXcd proj =
        Eigen::MatrixXcd::Identity(Li, Li) - signal * signal.adjoint();

    // sum_ij P_ij z^{j-i}, shifted by L-1 to a polynomial of degree 2L-2.
    std::vector<cdouble> coeffs(2 * L - 1);
    for (Eigen::Index i = 0; i < Li; ++i) {
        for (Eigen::Index j = 0; j < Li; ++j) {
            coeffs[static_cast<std::size_t>(j - i + Li - 1)] += proj(i, j);
        }
    }
    std::vector<cdouble> roots = polynomial_roots(coeffs);
    std::vector<cdouble> inside;
    for (const cdouble& z : roots) {
        if (std::abs(z) <= 1.0 + 1e-9) inside.push_back(z);
    }
    if (inside.size() < model_order) throw EstimationError("too few MUSIC roots inside the unit circle");
    std::partial_sort(inside.begin(), inside.begin() + static_cast<std::ptrdiff_t>(model_order),
                      inside.end(), [](cdouble a, cdouble b) {
                          return 1.0 - std::abs(a) < 1.0 - std::abs(b);
                      });
    inside.resize(model_order);
    for (cdouble& z : inside) z = newton_polish(coeffs, z);

    std::size_t pick = 0;
    if (model_order > 1) {
        std::vector<double> omegas;
        for (const cdouble& z : inside) omegas.push_back(std::arg(z));
        pick = strongest(sig.samples(), omegas);
    }
    RootMusicResult r;
    r.frequency_hz = std::arg(inside[pick]) / (2.0 * kPi) * sig.fs();
    r.root_modulus = std::abs(inside[pick]);
    r.subarray = L;
    r.snapshots = n - L + 1;
    return r;
}

EstimationResult estimate_target(const ComplexSignal& rx, SymbolShape tx_shape,
                                 const WaveformParams& params, const ReceiverConfig& cfg) {
    params.validate();
    cfg.validate(params);
    require_window(rx, params);
    const ComplexSignal ref = gen_symbol(params, tx_shape);
    const std::size_t half = params.samples_per_half();
    const BeatBands bands = beat_bands(params, cfg);
    const bool up_first = tx_shape == SymbolShape::TriangleLFM;

    const auto x = rx.samples();
    const auto r = ref.samples();
    EstimationResult res;
    res.first = process_segment(x.subspan(0, half), r.subspan(0, half), params.fs,
                                up_first ? bands.up_center : bands.down_center, bands, cfg);
    res.second = process_segment(x.subspan(half, half), r.subspan(half, half), params.fs,
                                 up_first ? bands.down_center : bands.up_center, bands, cfg);
    const double b_up = up_first ? res.first.signed_beat_hz : res.second.signed_beat_hz;
    const double b_down = up_first ? res.second.signed_beat_hz : res.first.signed_beat_hz;

    res.beat = {std::abs(b_up), std::abs(b_down)};
    if (cfg.enforce_regime && !(b_up > 0.0)) {
        throw AmbiguousRegimeError("up-chirp beat is not Doppler dominated (f_d <= mu tau)");
    }
    const double mu = params.mu();
    res.range_m = (b_down - b_up) * kSpeedOfLight / (4.0 * mu);
    res.velocity_mps = (b_up + b_down) * params.lambda() / 4.0;
    if (res.range_m < 0.0) throw AmbiguousRegimeError("down-chirp beat below up-chirp beat");
    return res;
}

EstimationResult estimate_target_fmcw(const ComplexSignal& rx, const WaveformParams& params,
                                      const ReceiverConfig& cfg) {
    params.validate();
    cfg.validate(params);
    require_window(rx, params);
    const ComplexSignal ref = gen_fmcw_frame(params);
    const std::size_t half = params.samples_per_half();
    const BeatBands bands = beat_bands(params, cfg);
    const auto x = rx.samples();
    const auto r = ref.samples();

    EstimationResult res;
    res.first = process_segment(x.subspan(0, half), r.subspan(0, half), params.fs,
                                bands.up_center, bands, cfg);
    res.second = process_segment(x.subspan(half, half), r.subspan(half, half), params.fs,
                                 bands.up_center, bands, cfg);
    const double b = 0.5 * (res.first.signed_beat_hz + res.second.signed_beat_hz);
    res.beat = {std::abs(res.first.signed_beat_hz), std::abs(res.second.signed_beat_hz)};

    // A static-target FMCW radar reads the beat as mu * tau; the Doppler part
    // (b = fd - mu tau here) becomes a range bias.
    const double mu = params.mu();
    res.range_m = -b * kSpeedOfLight / (2.0 * mu);

    // Phase advance between ramps is 2 pi fd T modulo 2 pi; the integer cycle
    // count is taken from the beat.
    const double T = static_cast<double>(half) / params.fs;
    const double cycles = std::arg(res.second.amplitude * std::conj(res.first.amplitude)) / (2.0 * kPi);
    const double wraps = std::round(b * T - cycles);
    const double fd = (cycles + wraps) / T;
    res.velocity_mps = fd * params.lambda() / 2.0;
    return res;
}

}  // namespace chirpjrc

// SPDX-License-Identifier: Apache-2.0
//
// oobsim - antenna array out-of-band emission simulator
// Copyright (C) 2026 The oobsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "oobsim/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "oobsim/error.hpp"
#include "oobsim/fft.hpp"

namespace oobsim {

double SpectrumEstimate::total_power() const { return std::accumulate(psd.begin(), psd.end(), 0.0); }

std::size_t centered_bin(std::size_t fft_index, std::size_t segment_len) {
    return (fft_index + segment_len / 2) % segment_len;
}

SpectrumEstimate power_spectrum(const ComplexSignal& signal, std::size_t segment_len) {
    if (signal.samples.empty()) throw ValidationError("cannot estimate the spectrum of an empty signal");
    if (segment_len == 0 || segment_len > signal.size())
        throw ValidationError("segment_len must be in [1, signal length]");
    if (!(signal.sample_rate > 0.0)) throw ValidationError("sample_rate must be positive");

    const std::size_t n = signal.size();
    const std::size_t L = segment_len;
    FftPlan fft(L, FftPlan::Direction::forward);

    SpectrumEstimate est;
    est.sample_rate = signal.sample_rate;
    est.resolution_bw = signal.sample_rate / static_cast<double>(L);
    est.psd.assign(L, 0.0);
    est.frequencies.resize(L);
    const auto half = static_cast<long>(L / 2);
    for (std::size_t j = 0; j < L; ++j)
        est.frequencies[j] = static_cast<double>(static_cast<long>(j) - half) * est.resolution_bw;

    std::span<const cplx> x(signal.samples);
    for (std::size_t start = 0; start < n; start += L) {
        const auto seg = x.subspan(start, std::min(L, n - start));
        const auto X = fft.transform(seg);
        for (std::size_t k = 0; k < L; ++k) est.psd[centered_bin(k, L)] += std::norm(X[k]);
    }
    const double norm = 1.0 / (static_cast<double>(n) * static_cast<double>(L));
    for (auto& p : est.psd) p *= norm;
    return est;
}

BandPower band_power(const SpectrumEstimate& spectrum, double f_low, double f_high) {
    const double nyq = spectrum.sample_rate / 2;
    if (!(f_low < f_high)) throw ValidationError("band_power requires f_low < f_high");
    if (f_low < -nyq || f_high > nyq) throw ValidationError("band exceeds the Nyquist span");
    BandPower out;
    bool any = false;
    for (std::size_t k = 0; k < spectrum.psd.size(); ++k) {
        const double f = spectrum.frequencies[k];
        if (f >= f_low && f < f_high) {
            out.power += spectrum.psd[k];
            any = true;
        }
    }
    out.empty_band = !any;
    return out;
}

std::vector<SpectralLine> line_spectrum(const RealSignal& signal, double threshold) {
    validate(signal);
    const std::size_t n = signal.size();
    if (n == 0) throw ValidationError("empty signal");
    FftPlan fft(n, FftPlan::Direction::forward);
    auto in = fft.input();
    for (std::size_t i = 0; i < n; ++i) in[i] = signal.samples[i];
    fft.execute();
    const auto X = fft.output();

    std::vector<SpectralLine> lines;
    const double df = signal.sample_rate / static_cast<double>(n);
    for (std::size_t k = 0; k <= n / 2; ++k) {
        const bool edge = k == 0 || (n % 2 == 0 && k == n / 2);
        const double amp = (edge ? 1.0 : 2.0) * std::abs(X[k]) / static_cast<double>(n);
        if (amp > threshold) lines.push_back({static_cast<double>(k) * df, amp});
    }
    return lines;
}

double tone_amplitude(const RealSignal& signal, double freq) {
    validate(signal);
    if (signal.samples.empty()) throw ValidationError("empty signal");
    const double w = 2 * std::numbers::pi * freq / signal.sample_rate;
    cplx acc{};
    for (std::size_t n = 0; n < signal.size(); ++n)
        acc += signal.samples[n] * std::polar(1.0, -w * static_cast<double>(n));
    const bool dc = freq == 0.0;
    return (dc ? 1.0 : 2.0) * std::abs(acc) / static_cast<double>(signal.size());
}

cplx tone_phasor(const ComplexSignal& signal, double freq) {
    validate(signal);
    if (signal.samples.empty()) throw ValidationError("empty signal");
    const double w = 2 * std::numbers::pi * freq / signal.sample_rate;
    cplx acc{};
    for (std::size_t n = 0; n < signal.size(); ++n)
        acc += signal.samples[n] * std::polar(1.0, -w * static_cast<double>(n));
    return acc / static_cast<double>(signal.size());
}

} // namespace oobsim

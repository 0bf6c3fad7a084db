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

#pragma once

#include <cstddef>
#include <vector>

#include "oobsim/signal.hpp"

namespace oobsim {

inline constexpr std::size_t kDefaultSegmentLen = 4096;

/// Two-sided, baseband-centred power spectrum. `psd[k]` is the power that
/// falls in bin k (not a density), so the bins sum to the time-domain
/// mean-square power.
struct SpectrumEstimate {
    std::vector<double> frequencies; // Hz, ascending, bin centres
    std::vector<double> psd;         // power per bin
    double resolution_bw = 0.0;      // Hz
    double sample_rate = 0.0;        // Hz

    double total_power() const;
};

/// Averaged periodogram with a rectangular window. The signal is cut into
/// consecutive segments of `segment_len` samples; a trailing partial
/// segment is zero-padded. Bin powers are normalized by the full signal
/// length so that Parseval's relation holds exactly.
SpectrumEstimate power_spectrum(const ComplexSignal& signal, std::size_t segment_len = kDefaultSegmentLen);

struct BandPower {
    double power = 0.0;
    bool empty_band = false; // no bin centre fell inside the band
};

/// Sum of bin powers with centres in [f_low, f_high).
BandPower band_power(const SpectrumEstimate& spectrum, double f_low, double f_high);

/// Maps segment bin index (FFT order) to its position in the centred grid.
std::size_t centered_bin(std::size_t fft_index, std::size_t segment_len);

struct SpectralLine {
    double frequency = 0.0; // Hz
    double amplitude = 0.0; // peak amplitude of the real cosine
};

/// One-sided amplitude spectrum of a real signal from a single full-length
/// DFT; exact for tones that complete an integer number of cycles. Lines
/// below `threshold` are dropped.
std::vector<SpectralLine> line_spectrum(const RealSignal& signal, double threshold = 1e-12);

/// Cosine amplitude of a real signal at `freq`, evaluated by direct DFT
/// correlation over the whole record.
double tone_amplitude(const RealSignal& signal, double freq);

/// Complex amplitude of a baseband signal at `freq`.
cplx tone_phasor(const ComplexSignal& signal, double freq);

} // namespace oobsim

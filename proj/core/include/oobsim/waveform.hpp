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
#include <cstdint>

#include "oobsim/signal.hpp"

namespace oobsim {

/// OFDM numerology. Lengths in `cp_len` and `window_len` are counted at the
/// base rate n_fft * subcarrier_spacing and are scaled by the oversampling
/// factor during synthesis.
struct OfdmConfig {
    int n_fft = 2048;
    int n_active = 1200;
    double subcarrier_spacing = 15e3; // Hz
    int oversampling_factor = 4;
    int cp_len = 144;
    int window_len = 16;
    int n_symbols = 12;

    double sample_rate() const { return n_fft * subcarrier_spacing * oversampling_factor; }
    double occupied_bandwidth() const { return n_active * subcarrier_spacing; }
    /// Samples per symbol at the output rate, cyclic prefix included.
    std::size_t symbol_stride() const {
        return static_cast<std::size_t>(cp_len + n_fft) * static_cast<std::size_t>(oversampling_factor);
    }
};

void validate(const OfdmConfig& cfg);

/// Sum of two unit-amplitude cosines. Throws ConfigError when any product of
/// a cubic nonlinearity (up to the third harmonics) would fold back across
/// Nyquist.
RealSignal gen_two_tone_passband(double f1, double f2, double phi1, double phi2, double sample_rate,
                                 std::size_t n_samples);

/// Zero-mean circular complex Gaussian samples with E|s|^2 = power.
ComplexSignal gen_complex_gaussian(double power, std::size_t n_samples, std::uint64_t seed,
                                   double sample_rate = 1.0);

/// QPSK-loaded CP-OFDM with raised-cosine edge windowing and overlap-add.
/// The symbol stream is wrapped circularly so that the result is
/// statistically stationary end to end. `n_samples == 0` keeps every
/// generated symbol; otherwise enough symbols are synthesized and the stream
/// is truncated. The result is scaled to a mean-square power of `power`.
ComplexSignal gen_ofdm(const OfdmConfig& cfg, double power, std::uint64_t seed,
                       std::size_t n_samples = 0);

/// Unit-amplitude complex exponential at `freq` (may be negative).
ComplexSignal gen_complex_tone(double freq, double sample_rate, std::size_t n_samples,
                               double phase = 0.0);

/// s1 exp(j 2 pi delta1 t) + s2 exp(j 2 pi delta2 t): two carriers offset
/// from the common baseband center.
ComplexSignal compose_dual_carrier(const ComplexSignal& s1, const ComplexSignal& s2, double delta1,
                                   double delta2);

/// Empirical mean of |s|^order; order must be 2, 4 or 6.
double sample_moments(const ComplexSignal& signal, int order);

/// Scales in place so that the mean-square power equals `power`.
void scale_to_power(ComplexSignal& signal, double power);

} // namespace oobsim

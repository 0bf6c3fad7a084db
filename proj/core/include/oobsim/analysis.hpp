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

#include "oobsim/amplifier.hpp"
#include "oobsim/signal.hpp"
#include "oobsim/spectrum.hpp"

namespace oobsim {

// Third-order distortion terms ----------------------------------------------

/// Baseband equivalents of the four third-order distortion terms of a
/// two-user cubic PA (spatial multiplexing, common carrier):
///
///   z1 = alpha (3/2 s1 |s2|^2 + 3/4 s1 |s1|^2)     steered like user 1
///   z2 = alpha (3/2 s2 |s1|^2 + 3/4 s2 |s2|^2)     steered like user 2
///   u1 = alpha  3/4 conj(s1) s2^2                  direction 2 phi2 - phi1
///   u2 = alpha  3/4 s1^2 conj(s2)                  direction 2 phi1 - phi2
///
/// `alpha` uses passband scaling: the cubic x + alpha x^3 has the baseband
/// equivalent x + (3 alpha / 4) x|x|^2, and the four terms sum to
/// (3 alpha / 4)|s1+s2|^2 (s1+s2). A complex alpha carries a PA phase
/// rotation.
struct DistortionTerms {
    ComplexSignal z1, z2, u1, u2;
};

DistortionTerms decompose_third_order(const ComplexSignal& s1, const ComplexSignal& s2, cplx alpha);

/// Passband-scaled alpha of a baseband third-order coefficient (4/3 of it).
inline cplx alpha_from_baseband(cplx alpha_bb) { return alpha_bb * (4.0 / 3.0); }
inline double alpha_from_baseband(double alpha_bb) { return alpha_bb * (4.0 / 3.0); }

/// Powers of z_l and u_l for independent circular Gaussian users with
/// E|s_l|^2 = P_l, derived from E|s|^4 = 2P^2 and E|s|^6 = 6P^3.
/// `alpha_mag` is |alpha| in the passband scaling used above; the equal-power
/// case reduces to P_z = 99/8 alpha^2 P^3 and P_v = 9/8 alpha^2 P^3.
struct TermPowers {
    double p_z1 = 0.0;
    double p_z2 = 0.0;
    double p_v1 = 0.0;
    double p_v2 = 0.0;
};

TermPowers analytic_term_powers(double p1, double p2, double alpha_mag);

// Effective beamforming gain -------------------------------------------------

/// E|sum_m exp(j psi_m)|^2 for i.i.d. psi_m.
struct GainResult {
    double gain = 0.0;
    DeviationFamily family = DeviationFamily::none;
    double sigma = 0.0;
    int n_antennas = 0;
    // Monte Carlo only.
    int trials = 0;
    double std_error = 0.0;
    double half_width = 0.0; // 99% confidence, normal approximation
};

/// sin(x)/x with sinc(0) = 1.
double sinc(double x);

/// Gaussian: M + (M^2 - M) exp(-sigma^2). Uniform on [-sigma, sigma]:
/// M + (M^2 - M) sinc^2(sigma). No deviation: M^2.
GainResult beamforming_gain_closed_form(int n_antennas, double sigma, DeviationFamily family);

/// Trial t draws its deviations from substream t of `seed`.
GainResult beamforming_gain_monte_carlo(int n_antennas, double sigma, DeviationFamily family, int trials,
                                        std::uint64_t seed);

enum class BeamLocation { main_beam, spurious };

/// Equal-power two-user received distortion power: (99/8 or 9/8) a^2 P^3
/// times the effective beamforming gain.
double received_distortion_power(int n_antennas, double sigma, DeviationFamily family, double power,
                                 double alpha_mag, BeamLocation location);

// Inband / out-of-band split --------------------------------------------------

enum class Band { inband, oob_lower, oob_upper, outside };

/// Inband [-bw/2, bw/2); adjacent channels [-3bw/2, -bw/2) and [bw/2, 3bw/2).
Band classify_frequency(double freq, double channel_bw);

struct BandSplit {
    double p_inband = 0.0;
    double p_oob_lower = 0.0;
    double p_oob_upper = 0.0;
    bool truncated = false; // adjacent channel cut off at Nyquist

    double p_oob() const { return p_oob_lower + p_oob_upper; }
};

BandSplit inband_oob_split(const SpectrumEstimate& spectrum, double channel_bw);
BandSplit inband_oob_split(const ComplexSignal& signal, double channel_bw,
                           std::size_t segment_len = kDefaultSegmentLen);

/// True when the adjacent channels of `channel_bw` do not fit under Nyquist.
bool adjacent_channels_truncated(double channel_bw, double sample_rate);

} // namespace oobsim

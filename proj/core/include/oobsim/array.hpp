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

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "oobsim/signal.hpp"
#include "oobsim/spectrum.hpp"

namespace oobsim {

/// Uniform linear array; `spacing` in carrier wavelengths.
struct ArrayConfig {
    int n_antennas = 60;
    double spacing = 0.5;
};

void validate(const ArrayConfig& array);

struct UserConfig {
    double angle_deg = 0.0; // from broadside, (-90, 90)
    ComplexSignal signal;
    double power = 1.0; // relative transmit power P_s,l
};

/// Received power per look angle. p_oob is the sum of both adjacent
/// channels, which are also reported separately.
struct BeamPattern {
    std::vector<double> angles; // deg
    std::vector<double> p_total;
    std::vector<double> p_inband;
    std::vector<double> p_oob;
    std::vector<double> p_oob_lower;
    std::vector<double> p_oob_upper;
    bool truncated = false; // an adjacent channel extended past Nyquist

    std::size_t size() const noexcept { return angles.size(); }
};

/// phi_m = -2 pi spacing m sin(theta), m = 0 .. M-1.
std::vector<double> steering_phases(double theta_deg, const ArrayConfig& array);

struct Precoded {
    std::vector<ComplexSignal> antennas;
    /// Amplitude factor applied to each user's input signal, common scalar
    /// included; user l contributes power user_gains[l]^2 * P(s_l) per antenna.
    std::vector<double> user_gains;

    /// Per-antenna power of user l's component.
    double user_power(std::size_t l, const std::vector<UserConfig>& users) const;
};

/// Phase-only multi-user precoder: x^m = g * sum_l c_l s_l exp(j phi_l^m),
/// where c_l scales user l to its configured relative power and the single
/// real g sets the mean per-antenna power to `target_input_power`.
Precoded precode(const std::vector<UserConfig>& users, const ArrayConfig& array, double target_input_power);

/// Line-of-sight far-field signal in direction theta:
/// r(t) = sum_m y^m(t) exp(+j 2 pi spacing m sin(theta)).
ComplexSignal far_field_signal(std::span<const ComplexSignal> per_antenna, double theta_deg,
                               const ArrayConfig& array);

/// Inclusive grid min, min+step, ..., max (step > 0).
std::vector<double> angle_grid(double min_deg, double max_deg, double step_deg);

/// Total, inband and adjacent-channel received power for every angle of
/// `grid`. Equivalent to running far_field_signal followed by
/// inband_oob_split per angle, but evaluated through per-band spatial
/// cross-spectral matrices so each angle costs O(M^2) instead of O(M N).
BeamPattern beampattern(std::span<const ComplexSignal> per_antenna, std::span<const double> grid,
                        double channel_bw, const ArrayConfig& array,
                        std::size_t segment_len = kDefaultSegmentLen);

/// Directions in which the two third-order intermodulation terms combine
/// coherently: asin(2 sin t2 - sin t1) and asin(2 sin t1 - sin t2). An entry
/// is empty when its sine argument leaves [-1, 1].
std::pair<std::optional<double>, std::optional<double>> spurious_directions(double theta1_deg,
                                                                            double theta2_deg);

/// A direction where the product s1^a s2^b (negative powers meaning
/// conjugates, a + b = 1) adds coherently.
struct IntermodDirection {
    int a = 0;
    int b = 0;
    int order = 0;           // |a| + |b|
    double angle_deg = 0.0;
    bool grating = false;    // visible only through spatial aliasing
};

/// Every visible intermodulation direction up to `max_order`, including
/// grating-lobe images for element spacings above half a wavelength worth of
/// phase wrap. User directions (order 1) are excluded.
std::vector<IntermodDirection> intermod_directions(double theta1_deg, double theta2_deg, int max_order,
                                                   const ArrayConfig& array);

/// Index of the grid point closest to `angle_deg`.
std::size_t nearest_index(std::span<const double> grid, double angle_deg);

} // namespace oobsim

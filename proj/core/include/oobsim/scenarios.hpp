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

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "oobsim/array.hpp"
#include "oobsim/scenario_config.hpp"

namespace oobsim {

// Two-tone spectra -------------------------------------------------------------

struct ToneLine {
    double alpha = 0.0;
    double frequency = 0.0; // Hz
    double amplitude = 0.0;
};

/// One predicted line against its measurement. `error` is relative, or
/// absolute when the prediction is zero.
struct ToneCheck {
    double alpha = 0.0;
    std::string name;
    double frequency = 0.0;
    double expected = 0.0;
    double measured = 0.0;
    double error = 0.0;
};

struct TwoToneResult {
    std::vector<ToneLine> lines;
    std::vector<ToneCheck> checks;

    double max_error() const;
};

/// Cubic PA driven by two unit tones for every configured alpha. Passband mode
/// uses y = x + alpha x^3 on real cosines; dual-carrier mode offsets two
/// constant baseband signals by delta1/delta2 and applies the equivalent
/// baseband model x + (3 alpha / 4) x|x|^2. Fundamentals are checked against
/// 1 + 9 alpha / 4 and the two nearest intermodulation lines against
/// 3 |alpha| / 4.
TwoToneResult run_two_tone(const ScenarioConfig& cfg);

// Beampatterns -----------------------------------------------------------------

struct BeampatternResult {
    BeamPattern pattern;
    /// linear, z1, z2, u1, u2 when per-term output is requested.
    std::vector<std::pair<std::string, BeamPattern>> terms;
    /// Linear power every pattern was divided by (1 when normalization is off).
    double reference = 1.0;
    double input_power = 0.0;
    double sample_rate = 0.0;
};

/// Per-user baseband signals as configured (unit power, independent
/// substreams of the waveform seed).
std::vector<ComplexSignal> user_signals(const ScenarioConfig& cfg);

/// Precoded, amplified and swept over the angle grid.
BeampatternResult run_beampattern(const ScenarioConfig& cfg);

// Gain curve -------------------------------------------------------------------

struct GainCurveRow {
    double sigma = 0.0;
    double rel_gauss = 0.0;
    double rel_uniform = 0.0;
    double rel_gauss_mc = 0.0;
    double rel_uniform_mc = 0.0;
    double mc_halfwidth = 0.0; // larger of the two families, amplitude units
};

struct GainCurveResult {
    std::vector<GainCurveRow> rows;
    int n_antennas = 0;
    double noncoherent_floor = 0.0; // 1 / sqrt(M)
};

/// Relative amplitude gain sqrt(G) / M over the configured sigma grid.
GainCurveResult run_gain_curve(const ScenarioConfig& cfg);

// Output -----------------------------------------------------------------------

/// Writes two_tone.csv and manifest.json; returns the files written.
std::vector<std::filesystem::path> write_two_tone(const TwoToneResult& r, const ScenarioConfig& cfg,
                                                  const std::filesystem::path& dir);
/// Writes beampattern.csv, beampattern_oob_sides.csv, per-term files when
/// present, and manifest.json.
std::vector<std::filesystem::path> write_beampattern(const BeampatternResult& r, const ScenarioConfig& cfg,
                                                     const std::filesystem::path& dir);
/// Writes gain_curve.csv and manifest.json.
std::vector<std::filesystem::path> write_gain_curve(const GainCurveResult& r, const ScenarioConfig& cfg,
                                                    const std::filesystem::path& dir);

} // namespace oobsim

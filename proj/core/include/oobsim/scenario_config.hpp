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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oobsim/amplifier.hpp"
#include "oobsim/array.hpp"
#include "oobsim/spectrum.hpp"
#include "oobsim/waveform.hpp"

namespace oobsim {

struct UserSettings {
    double angle_deg = 0.0;
    double power = 1.0;
};

struct PaSettings {
    std::string preset = "cubic";
    std::string file;                 // overrides preset when non-empty
    std::optional<double> clip_level; // overrides the model's clip level
    bool clipping = true;             // false removes clipping entirely
};

struct DeviationSettings {
    PhaseDeviationSpec spec;
    std::uint64_t seed = 2;
};

struct TwoToneSettings {
    enum class Mode { passband, dual_carrier };
    Mode mode = Mode::passband;
    // passband
    double f1 = 10e6;
    double f2 = 11e6;
    double phi1 = 0.0;
    double phi2 = 0.0;
    double sample_rate = 200e6;
    std::size_t n_samples = 2000;
    // dual carrier (complex baseband offsets)
    double delta1 = -2e6;
    double delta2 = 3e6;
    double baseband_rate = 40e6;
    std::vector<double> alphas{0.1, -0.05};
};

struct WaveformSettings {
    enum class Type { ofdm, gaussian };
    Type type = Type::ofdm;
    std::size_t n_samples = 100000;
    std::uint64_t seed = 1;
    double sample_rate = 122.88e6; // gaussian only; OFDM derives its own
    OfdmConfig ofdm;
    TwoToneSettings two_tone;
};

/// Per-antenna input drive: either an explicit mean power or a backoff below
/// the PA's saturation level (clip level, or AM/AM peak when unclipped).
struct OperatingPoint {
    double backoff_db = 8.0;
    std::optional<double> input_power;
};

struct GridSettings {
    double min_deg = -90.0;
    double max_deg = 90.0;
    double step_deg = 0.1;
};

struct GainCurveSettings {
    double sigma_min = 0.0;
    double sigma_max = 4.0;
    double sigma_step = 0.05;
    int trials = 10000;
    std::uint64_t seed = 3;
};

struct ValidationSettings {
    std::size_t moment_samples = 1000000;
    std::size_t power_samples = 1 << 20;
    std::size_t direction_samples = 1 << 14;
    int mc_trials = 10000;
    std::vector<int> gain_antennas{2, 16, 60};
    std::vector<double> gain_sigmas{0.0, 0.1145, 0.5, 1.0, 2.0, 3.141592653589793};
    std::uint64_t seed = 4;
};

struct OutputSettings {
    enum class Normalization { user_inband, none };
    std::string directory = "out";
    Normalization normalization = Normalization::user_inband;
    bool per_term = false;
};

/// Everything a scenario run needs. Defaults reproduce the two-user,
/// 60-antenna line-of-sight setup with users at -15 and 12 degrees.
struct ScenarioConfig {
    ArrayConfig array;
    std::vector<UserSettings> users{{-15.0, 1.0}, {12.0, 1.0}};
    PaSettings pa;
    DeviationSettings deviations;
    WaveformSettings waveform;
    OperatingPoint operating_point;
    GridSettings grid;
    double channel_bw = 20e6;
    std::size_t segment_len = kDefaultSegmentLen;
    GainCurveSettings gain_curve;
    ValidationSettings validation;
    OutputSettings outputs;
};

/// Parses a JSON scenario. Every key is optional; unknown keys and type
/// mismatches raise ConfigError naming the field path.
ScenarioConfig parse_config(std::string_view json_text);
ScenarioConfig load_config(const std::string& path);

/// Resolved configuration as pretty-printed JSON (stable key order).
std::string config_to_json(const ScenarioConfig& cfg);

/// Semantic checks beyond parsing (angles, powers, presets).
void validate(const ScenarioConfig& cfg);

/// Replaces every seed in the configuration with one derived from `seed`.
void apply_seed(ScenarioConfig& cfg, std::uint64_t seed);

/// PA bank for the configured array: preset or file, clip overrides, and
/// phase deviations applied.
PaBank resolve_pa_bank(const ScenarioConfig& cfg);

/// The undeviated base model (first model of a file).
PaModel resolve_pa_model(const ScenarioConfig& cfg);

/// Mean per-antenna PA input power for the configured operating point.
double resolve_input_power(const ScenarioConfig& cfg);

} // namespace oobsim

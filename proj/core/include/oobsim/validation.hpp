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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "oobsim/analysis.hpp"
#include "oobsim/scenario_config.hpp"

namespace oobsim {

struct ValidationCheck {
    std::string name;
    double analytic = 0.0;
    double simulated = 0.0;
    double error = 0.0;     // in the units the tolerance is stated in
    double tolerance = 0.0;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;

    bool passed() const;
    std::size_t failures() const;
    const ValidationCheck* find(const std::string& name) const;
};

/// Replaceable pieces of the analytic side, so that a broken formula can be
/// injected and shown to be caught.
struct ValidationHooks {
    std::function<GainResult(int, double, DeviationFamily)> closed_form_gain = beamforming_gain_closed_form;
};

/// Runs every analytic-versus-simulated check. A failing or throwing check is
/// recorded and the remaining checks still run.
ValidationReport run_validation(const ScenarioConfig& cfg, const ValidationHooks& hooks = {});

/// Received third-order distortion power in the direction of user 1 for
/// independent Gaussian users, unclipped cubic PAs and no phase deviations.
/// Streams over time so that long records never hold all antenna signals.
struct MainBeamPower {
    double simulated = 0.0;
    double analytic = 0.0;     // (99/8) a^2 P^3 M^2 with the measured per-user P
    double per_user_power = 0.0;
};
MainBeamPower main_beam_distortion(const ArrayConfig& array, double theta1_deg, double theta2_deg,
                                   double alpha_bb, double input_power, std::size_t n_samples,
                                   std::uint64_t seed);

/// Writes validation.csv and manifest.json.
std::vector<std::filesystem::path> write_validation(const ValidationReport& r, const ScenarioConfig& cfg,
                                                    const std::filesystem::path& dir);

} // namespace oobsim

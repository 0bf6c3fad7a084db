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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "oobsim/error.hpp"
#include "oobsim/scenarios.hpp"
#include "oobsim/validation.hpp"
#include "oobsim/version.hpp"

namespace {

struct CommonArgs {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config, "JSON scenario file (defaults apply when omitted)");
    cmd->add_option("--out", args.out, "output directory (overrides outputs.directory)");
    cmd->add_option("--seed", args.seed, "master seed; replaces every seed in the configuration");
}

oobsim::ScenarioConfig resolve(const CommonArgs& args) {
    oobsim::ScenarioConfig cfg = args.config.empty() ? oobsim::ScenarioConfig{} : oobsim::load_config(args.config);
    if (args.seed) oobsim::apply_seed(cfg, *args.seed);
    if (!args.out.empty()) cfg.outputs.directory = args.out;
    oobsim::validate(cfg);
    return cfg;
}

void list(const std::vector<std::filesystem::path>& files) {
    for (const auto& f : files) std::cout << "wrote " << f.string() << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Out-of-band emission simulator for multi-user antenna arrays"};
    app.set_version_flag("--version", std::string(oobsim::kVersion));
    app.require_subcommand(1);

    CommonArgs tt_args, bp_args, gc_args, va_args;
    auto* two_tone = app.add_subcommand("two-tone", "cubic PA two-tone line spectrum");
    add_common(two_tone, tt_args);
    auto* beam = app.add_subcommand("beampattern", "total, inband and OOB beampatterns");
    add_common(beam, bp_args);
    bool per_term = false;
    beam->add_flag("--per-term", per_term, "also write linear/z1/z2/u1/u2 patterns");
    auto* gain = app.add_subcommand("gain-curve", "relative beamforming gain versus phase spread");
    add_common(gain, gc_args);
    auto* valid = app.add_subcommand("validate", "analytic-versus-simulated checks");
    add_common(valid, va_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*two_tone) {
            const auto cfg = resolve(tt_args);
            const auto r = oobsim::run_two_tone(cfg);
            list(oobsim::write_two_tone(r, cfg, cfg.outputs.directory));
            std::cout << "largest line error " << r.max_error() << '\n';
            return r.max_error() <= 1e-9 ? 0 : 1;
        }
        if (*beam) {
            auto cfg = resolve(bp_args);
            if (per_term) cfg.outputs.per_term = true;
            const auto r = oobsim::run_beampattern(cfg);
            if (r.pattern.truncated)
                std::cerr << "warning: an adjacent channel extends past Nyquist and was truncated\n";
            list(oobsim::write_beampattern(r, cfg, cfg.outputs.directory));
            return 0;
        }
        if (*gain) {
            const auto cfg = resolve(gc_args);
            list(oobsim::write_gain_curve(oobsim::run_gain_curve(cfg), cfg, cfg.outputs.directory));
            return 0;
        }
        const auto cfg = resolve(va_args);
        const auto report = oobsim::run_validation(cfg);
        for (const auto& c : report.checks)
            std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  analytic=" << c.analytic
                      << " simulated=" << c.simulated << " error=" << c.error << " tol=" << c.tolerance
                      << (c.detail.empty() ? "" : "  (" + c.detail + ")") << '\n';
        list(oobsim::write_validation(report, cfg, cfg.outputs.directory));
        std::cout << report.checks.size() - report.failures() << '/' << report.checks.size() << " checks passed\n";
        return report.passed() ? 0 : 1;
    } catch (const oobsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

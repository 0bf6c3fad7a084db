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

#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "oobsim/error.hpp"
#include "oobsim/scenario_config.hpp"

using namespace oobsim;

namespace {

std::string field_of(const std::string& json) {
    try {
        parse_config(json);
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "<accepted>";
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
    const auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << text;
    return p;
}

} // namespace

TEST_CASE("empty object gives the defaults") {
    const auto cfg = parse_config("{}");
    CHECK(cfg.array.n_antennas == 60);
    CHECK(cfg.array.spacing == 0.5);
    REQUIRE(cfg.users.size() == 2);
    CHECK(cfg.users[0].angle_deg == -15.0);
    CHECK(cfg.users[1].angle_deg == 12.0);
    CHECK(cfg.pa.preset == "cubic");
    CHECK(cfg.operating_point.backoff_db == 8.0);
    CHECK(cfg.channel_bw == 20e6);
    CHECK(cfg.grid.step_deg == 0.1);
    CHECK(config_to_json(cfg) == config_to_json(ScenarioConfig{}));
}

TEST_CASE("resolved configuration round trips") {
    auto cfg = parse_config(R"({
        "array": {"n_antennas": 16, "spacing": 0.6},
        "users": [{"angle_deg": -30, "power": 2}, {"angle_deg": 5}],
        "pa": {"preset": "ninth_order_synthetic", "clip_level": 2.0},
        "deviations": {"family": "uniform", "sigma": 0.4, "seed": 9},
        "waveform": {"type": "gaussian", "n_samples": 1234, "ofdm": {"n_symbols": 3},
                     "two_tone": {"mode": "dual_carrier", "alphas": [0.2]}},
        "operating_point": {"input_power": 0.5},
        "outputs": {"normalization": "none", "per_term": true}
    })");
    CHECK(cfg.array.n_antennas == 16);
    CHECK(cfg.users[1].power == 1.0);
    CHECK(cfg.pa.clip_level == 2.0);
    CHECK(cfg.deviations.spec.family == DeviationFamily::uniform);
    CHECK(cfg.waveform.type == WaveformSettings::Type::gaussian);
    CHECK(cfg.waveform.ofdm.n_symbols == 3);
    CHECK(cfg.waveform.two_tone.mode == TwoToneSettings::Mode::dual_carrier);
    CHECK(cfg.operating_point.input_power == 0.5);
    CHECK(cfg.outputs.per_term);
    const auto text = config_to_json(cfg);
    CHECK(config_to_json(parse_config(text)) == text);
}

TEST_CASE("errors carry the field path") {
    CHECK(field_of(R"({"array": {"n_antenas": 3}})") == "array.n_antenas");
    CHECK(field_of(R"({"colour": 1})") == "colour");
    CHECK(field_of(R"({"array": {"n_antennas": 2.5}})") == "array.n_antennas");
    CHECK(field_of(R"({"array": {"n_antennas": 0}})") == "array.n_antennas");
    CHECK(field_of(R"({"users": [{"angle_deg": 0}, {"angle_deg": 95}]})") == "users[1].angle_deg");
    CHECK(field_of(R"({"users": [{"angle": 0}]})") == "users[0].angle");
    CHECK(field_of(R"({"pa": {"preset": "tube"}})") == "pa.preset");
    CHECK(field_of(R"({"operating_point": {"backoff_db": -1}})") == "operating_point.backoff_db");
    CHECK(field_of(R"({"deviations": {"family": "cauchy"}})") == "deviations.family");
    CHECK(field_of(R"({"waveform": {"ofdm": {"window_len": 500}}})") == "waveform.ofdm.window_len");
    CHECK(field_of(R"({"validation": {"gain_sigmas": [0, "x"]}})") == "validation.gain_sigmas[1]");
    CHECK(field_of(R"({"outputs": {"per_term": 1}})") == "outputs.per_term");
    CHECK(field_of(R"({"gain_curve": {"seed": -4}})") == "gain_curve.seed");
    CHECK(field_of("[1, 2]") == "<root>");
    CHECK(field_of("{ not json") == "<root>");
}

TEST_CASE("seed override") {
    ScenarioConfig a, b;
    apply_seed(a, 42);
    apply_seed(b, 42);
    CHECK(config_to_json(a) == config_to_json(b));
    apply_seed(b, 43);
    CHECK(a.waveform.seed != b.waveform.seed);
    CHECK(a.waveform.seed != a.deviations.seed);
    CHECK(a.gain_curve.seed != a.validation.seed);
}

TEST_CASE("operating point") {
    ScenarioConfig cfg;
    const double sat = std::sqrt(1.0 / (3.0 * 0.0368));
    CHECK(resolve_input_power(cfg) == doctest::Approx(sat * sat / std::pow(10.0, 0.8)).epsilon(1e-6));
    cfg.pa.preset = "ninth_order_synthetic";
    CHECK(resolve_input_power(cfg) == doctest::Approx(6.25 / std::pow(10.0, 0.8)));
    cfg.pa.clip_level = 2.0;
    CHECK(resolve_input_power(cfg) == doctest::Approx(4.0 / std::pow(10.0, 0.8)));
    cfg.operating_point.input_power = 0.3;
    CHECK(resolve_input_power(cfg) == 0.3);
}

TEST_CASE("PA bank resolution") {
    ScenarioConfig cfg;
    cfg.array.n_antennas = 3;
    cfg.pa.preset = "ninth_order_synthetic";
    cfg.pa.clipping = false;
    auto bank = resolve_pa_bank(cfg);
    REQUIRE(bank.size() == 3);
    CHECK_FALSE(bank.models[0].clips());

    cfg.pa.clipping = true;
    cfg.pa.file = temp_file("oobsim_one.pa", "(1,0) (-0.05,0) 3\n").string();
    bank = resolve_pa_bank(cfg);
    REQUIRE(bank.size() == 3);
    CHECK(bank.models[2].coeffs[1] == cplx(-0.05, 0));
    CHECK(bank.models[2].clip_level == 3.0);

    cfg.pa.file = temp_file("oobsim_three.pa", "(1,0) (-0.01,0) inf\n(1,0) (-0.02,0) inf\n(1,0) (-0.03,0) inf\n").string();
    cfg.deviations.spec = {DeviationFamily::gaussian, 0.2};
    bank = resolve_pa_bank(cfg);
    for (std::size_t m = 0; m < 3; ++m)
        CHECK(std::abs(bank.models[m].coeffs[1] - cplx(-0.01 * (m + 1)) * std::polar(1.0, bank.deviations[m])) < 1e-15);

    cfg.array.n_antennas = 4;
    try {
        resolve_pa_bank(cfg);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "pa.file");
    }
}

TEST_CASE("load_config reads files") {
    const auto p = temp_file("oobsim_cfg.json", R"({"array": {"n_antennas": 7}})");
    CHECK(load_config(p.string()).array.n_antennas == 7);
    CHECK_THROWS_AS(load_config("/nonexistent/oobsim.json"), ConfigError);
}

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
#include <numbers>

#include "doctest.h"
#include "oobsim/error.hpp"
#include "oobsim/spectrum.hpp"
#include "oobsim/waveform.hpp"

using namespace oobsim;

TEST_CASE("Parseval holds with a zero-padded trailing segment") {
    const auto s = gen_complex_gaussian(1.3, 10000, 4, 50.0);
    const auto sp = power_spectrum(s, 4096);
    CHECK(sp.psd.size() == 4096);
    CHECK(sp.total_power() == doctest::Approx(mean_power(s)).epsilon(1e-12));
    CHECK(sp.resolution_bw == doctest::Approx(50.0 / 4096));
}

TEST_CASE("frequency grid is centred and ascending") {
    const auto s = gen_complex_gaussian(1.0, 64, 4, 8.0);
    const auto sp = power_spectrum(s, 8);
    REQUIRE(sp.frequencies.size() == 8);
    CHECK(sp.frequencies.front() == doctest::Approx(-4.0));
    CHECK(sp.frequencies[4] == doctest::Approx(0.0));
    CHECK(sp.frequencies.back() == doctest::Approx(3.0));
    CHECK(centered_bin(0, 8) == 4);
    CHECK(centered_bin(7, 8) == 3);
}

TEST_CASE("a bin-centred tone lands in exactly one bin") {
    const double fs = 1024.0;
    const auto t = gen_complex_tone(-96.0, fs, 4096);
    const auto sp = power_spectrum(t, 1024);
    std::size_t peak = 0;
    for (std::size_t k = 0; k < sp.psd.size(); ++k)
        if (sp.psd[k] > sp.psd[peak]) peak = k;
    CHECK(sp.frequencies[peak] == doctest::Approx(-96.0));
    CHECK(sp.psd[peak] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sp.total_power() - sp.psd[peak] < 1e-20);
}

TEST_CASE("band_power uses half-open bands and flags empty ones") {
    ComplexSignal s{std::vector<cplx>(16, cplx(1.0)), 16.0}; // DC only
    const auto sp = power_spectrum(s, 16);
    CHECK(band_power(sp, 0.0, 1.0).power == doctest::Approx(1.0));
    CHECK(band_power(sp, -1.0, 0.0).power == doctest::Approx(0.0));
    CHECK(band_power(sp, 0.2, 0.8).empty_band);
    CHECK_THROWS_AS(band_power(sp, 1.0, 1.0), ValidationError);
    CHECK_THROWS_AS(band_power(sp, -9.0, 0.0), ValidationError);
}

TEST_CASE("power_spectrum argument checks") {
    ComplexSignal s{std::vector<cplx>(16, cplx(1.0)), 16.0};
    CHECK_THROWS_AS(power_spectrum(s, 0), ValidationError);
    CHECK_THROWS_AS(power_spectrum(s, 17), ValidationError);
    ComplexSignal e{{}, 16.0};
    CHECK_THROWS_AS(power_spectrum(e, 1), ValidationError);
}

TEST_CASE("line spectrum of real cosines") {
    RealSignal x;
    x.sample_rate = 1000.0;
    for (int n = 0; n < 1000; ++n)
        x.samples.push_back(0.5 + 0.7 * std::cos(2 * std::numbers::pi * 50 * n / 1000.0 + 0.3) +
                            0.1 * std::sin(2 * std::numbers::pi * 120 * n / 1000.0));
    const auto lines = line_spectrum(x, 1e-9);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0].frequency == 0.0);
    CHECK(lines[0].amplitude == doctest::Approx(0.5));
    CHECK(lines[1].frequency == doctest::Approx(50.0));
    CHECK(lines[1].amplitude == doctest::Approx(0.7));
    CHECK(lines[2].amplitude == doctest::Approx(0.1));
    CHECK(tone_amplitude(x, 120.0) == doctest::Approx(0.1));
    CHECK(tone_amplitude(x, 0.0) == doctest::Approx(0.5));
}

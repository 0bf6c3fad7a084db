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
#include <random>

#include "doctest.h"
#include "oobsim/amplifier.hpp"
#include "oobsim/analysis.hpp"
#include "oobsim/error.hpp"
#include "oobsim/waveform.hpp"

using namespace oobsim;

namespace {

// Plain Monte Carlo of |sum exp(j psi)|^2, independent of the library.
double reference_gain(int M, double sigma, bool gaussian, int trials, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> nd(0.0, sigma > 0 ? sigma : 1.0);
    std::uniform_real_distribution<double> ud(-sigma, sigma);
    double acc = 0;
    for (int t = 0; t < trials; ++t) {
        double re = 0, im = 0;
        for (int m = 0; m < M; ++m) {
            const double p = sigma == 0 ? 0.0 : gaussian ? nd(rng) : ud(rng);
            re += std::cos(p);
            im += std::sin(p);
        }
        acc += re * re + im * im;
    }
    return acc / trials;
}

ComplexSignal constant(cplx v, std::size_t n) { return {std::vector<cplx>(n, v), 1.0}; }

} // namespace

TEST_CASE("decomposition: single user degenerates to the self term") {
    const auto s1 = gen_complex_gaussian(1.0, 256, 1);
    const auto s2 = constant(0.0, 256);
    const cplx a(0.3, -0.1);
    const auto d = decompose_third_order(s1, s2, a);
    for (std::size_t i = 0; i < 256; ++i) {
        CHECK(d.z2.samples[i] == cplx(0.0));
        CHECK(d.u1.samples[i] == cplx(0.0));
        CHECK(d.u2.samples[i] == cplx(0.0));
        const cplx x = s1.samples[i];
        CHECK(std::abs(d.z1.samples[i] - 0.75 * a * std::norm(x) * x) < 1e-15);
    }
}

TEST_CASE("decomposition: constant unit users") {
    const auto d = decompose_third_order(constant(1.0, 4), constant(1.0, 4), cplx(1.0));
    CHECK(d.z1.samples[0] == cplx(2.25));
    CHECK(d.z2.samples[0] == cplx(2.25));
    CHECK(d.u1.samples[0] == cplx(0.75));
    CHECK(d.u2.samples[0] == cplx(0.75));
}

TEST_CASE("decomposition: terms sum to the cubic of the sum") {
    const auto s1 = gen_complex_gaussian(1.0, 1 << 14, 7);
    const auto s2 = gen_complex_gaussian(0.3, 1 << 14, 8);
    const cplx a = alpha_from_baseband(cplx(-0.0368, 0.02));
    const auto d = decompose_third_order(s1, s2, a);
    double worst = 0, scale = 0;
    for (std::size_t i = 0; i < s1.size(); ++i) {
        const cplx x = s1.samples[i] + s2.samples[i];
        const cplx rhs = 0.75 * a * std::norm(x) * x;
        worst = std::max(worst, std::abs(d.z1.samples[i] + d.z2.samples[i] + d.u1.samples[i] + d.u2.samples[i] - rhs));
        scale = std::max(scale, std::abs(rhs));
    }
    CHECK(worst / scale <= 1e-12);
    CHECK_THROWS_AS(decompose_third_order(s1, constant(1.0, 3), a), ValidationError);
}

TEST_CASE("baseband and passband alpha") {
    CHECK(alpha_from_baseband(-0.0368) == doctest::Approx(-0.0368 * 4 / 3));
    // baseband x + (3a/4) x|x|^2 is the passband x + a x^3 seen at the carrier
    const double a = 0.2;
    PaModel bb;
    bb.coeffs = {1.0, 0.75 * a};
    const auto d = decompose_third_order(constant(1.0, 1), constant(0.0, 1), cplx(a));
    CHECK(std::abs(bb(cplx(1.0)) - (1.0 + d.z1.samples[0])) < 1e-15);
}

TEST_CASE("analytic term powers at equal power") {
    const double a = 0.07, P = 1.9;
    const auto tp = analytic_term_powers(P, P, a);
    CHECK(tp.p_z1 == doctest::Approx(99.0 / 8.0 * a * a * P * P * P));
    CHECK(tp.p_z2 == doctest::Approx(tp.p_z1));
    CHECK(tp.p_v1 == doctest::Approx(9.0 / 8.0 * a * a * P * P * P));
    CHECK(tp.p_v2 == doctest::Approx(tp.p_v1));
    CHECK(tp.p_z1 / tp.p_v1 == doctest::Approx(11.0));
    CHECK(to_db(tp.p_z1 / tp.p_v1) == doctest::Approx(10.41).epsilon(1e-3));
    CHECK_THROWS_AS(analytic_term_powers(0.0, 1.0, a), ValidationError);
}

TEST_CASE("analytic term powers against Gaussian sample averages") {
    const double p1 = 0.6, p2 = 1.7;
    const auto s1 = gen_complex_gaussian(p1, 1000000, 21);
    const auto s2 = gen_complex_gaussian(p2, 1000000, 22);
    const auto d = decompose_third_order(s1, s2, cplx(0.5));
    const auto tp = analytic_term_powers(p1, p2, 0.5);
    CHECK(mean_power(d.z1) == doctest::Approx(tp.p_z1).epsilon(0.02));
    CHECK(mean_power(d.z2) == doctest::Approx(tp.p_z2).epsilon(0.02));
    CHECK(mean_power(d.u1) == doctest::Approx(tp.p_v1).epsilon(0.02));
    CHECK(mean_power(d.u2) == doctest::Approx(tp.p_v2).epsilon(0.02));
}

TEST_CASE("closed-form gains") {
    for (auto f : {DeviationFamily::gaussian, DeviationFamily::uniform})
        CHECK(beamforming_gain_closed_form(60, 0.0, f).gain == doctest::Approx(3600.0));
    CHECK(beamforming_gain_closed_form(60, std::numbers::pi, DeviationFamily::uniform).gain ==
          doctest::Approx(60.0).epsilon(1e-12));
    CHECK(beamforming_gain_closed_form(60, 2.0, DeviationFamily::none).gain == 3600.0);
    CHECK(beamforming_gain_closed_form(1, 1.0, DeviationFamily::gaussian).gain == doctest::Approx(1.0));
    const double ref = reference_gain(60, 0.1145, true, 100000, 5);
    const double cf = beamforming_gain_closed_form(60, 0.1145, DeviationFamily::gaussian).gain;
    CHECK(cf == doctest::Approx(3553.9).epsilon(1e-4));
    CHECK(cf == doctest::Approx(ref).epsilon(1e-3));
    CHECK_THROWS_AS(beamforming_gain_closed_form(0, 0.1, DeviationFamily::uniform), ValidationError);
    CHECK_THROWS_AS(beamforming_gain_closed_form(4, -0.1, DeviationFamily::uniform), ValidationError);
}

TEST_CASE("sinc near zero") {
    CHECK(sinc(0.0) == 1.0);
    CHECK(sinc(1e-6) == doctest::Approx(1.0 - 1e-12 / 6));
    CHECK(sinc(1e-4 * 1.0001) == doctest::Approx(std::sin(1.0001e-4) / 1.0001e-4).epsilon(1e-15));
    CHECK(std::abs(sinc(std::numbers::pi)) < 1e-15);
}

TEST_CASE("gain bounds and monotonicity") {
    for (int M : {1, 2, 16, 60}) {
        double prev = INFINITY;
        for (int i = 0; i <= 100; ++i) {
            const double s = 0.05 * i;
            for (auto f : {DeviationFamily::gaussian, DeviationFamily::uniform}) {
                const double g = beamforming_gain_closed_form(M, s, f).gain;
                CHECK(g >= M * (1 - 1e-12));
                CHECK(g <= double(M) * M * (1 + 1e-12));
            }
            const double g = beamforming_gain_closed_form(M, s, DeviationFamily::gaussian).gain;
            CHECK(g <= prev * (1 + 1e-12));
            prev = g;
        }
    }
}

TEST_CASE("Monte Carlo gain") {
    const auto zero = beamforming_gain_monte_carlo(60, 0.0, DeviationFamily::gaussian, 200, 1);
    CHECK(zero.gain == doctest::Approx(3600.0).epsilon(1e-14));
    CHECK(zero.std_error == doctest::Approx(0.0));

    const auto mc = beamforming_gain_monte_carlo(60, 0.5, DeviationFamily::gaussian, 10000, 7);
    const auto cf = beamforming_gain_closed_form(60, 0.5, DeviationFamily::gaussian);
    CHECK(std::abs(mc.gain - cf.gain) <= 3 * mc.std_error);
    CHECK(mc.half_width == doctest::Approx(2.5758 * mc.std_error).epsilon(1e-3));
    CHECK(mc.trials == 10000);

    const auto again = beamforming_gain_monte_carlo(60, 0.5, DeviationFamily::gaussian, 10000, 7);
    CHECK(again.gain == mc.gain);

    const auto floor2 = beamforming_gain_monte_carlo(2, std::numbers::pi, DeviationFamily::uniform, 100000, 3);
    CHECK(floor2.gain == doctest::Approx(2.0).epsilon(0.02));
    CHECK_THROWS_AS(beamforming_gain_monte_carlo(2, 1.0, DeviationFamily::uniform, 99, 3), ValidationError);
}

TEST_CASE("received distortion power") {
    const double a = 0.05, P = 1.2;
    for (int M : {1, 8, 60})
        for (double s : {0.0, 0.3, 2.0})
            for (auto f : {DeviationFamily::gaussian, DeviationFamily::uniform}) {
                const double main = received_distortion_power(M, s, f, P, a, BeamLocation::main_beam);
                const double spur = received_distortion_power(M, s, f, P, a, BeamLocation::spurious);
                CHECK(main / spur == doctest::Approx(11.0).epsilon(1e-12));
            }
    CHECK(received_distortion_power(60, 0.0, DeviationFamily::gaussian, P, a, BeamLocation::main_beam) ==
          doctest::Approx(99.0 / 8 * a * a * P * P * P * 3600));
    CHECK(received_distortion_power(1, 0.7, DeviationFamily::uniform, P, a, BeamLocation::main_beam) ==
          doctest::Approx(analytic_term_powers(P, P, a).p_z1));
}

TEST_CASE("frequency classification") {
    CHECK(classify_frequency(0.0, 20e6) == Band::inband);
    CHECK(classify_frequency(-10e6, 20e6) == Band::inband);
    CHECK(classify_frequency(10e6, 20e6) == Band::oob_upper);
    CHECK(classify_frequency(-10.1e6, 20e6) == Band::oob_lower);
    CHECK(classify_frequency(-30e6, 20e6) == Band::oob_lower);
    CHECK(classify_frequency(30e6, 20e6) == Band::outside);
}

TEST_CASE("band split") {
    const double bw = 20e6;
    SUBCASE("pure inband tone") {
        const auto t = gen_complex_tone(2.5e6, 80e6, 1 << 14);
        const auto b = inband_oob_split(t, bw, 4096);
        CHECK(b.p_inband == doctest::Approx(1.0));
        CHECK(b.p_oob() < 1e-20);
    }
    SUBCASE("white noise over three channel widths") {
        const auto s = gen_complex_gaussian(1.0, 1 << 18, 3, 3 * bw);
        const auto b = inband_oob_split(s, bw, 4096);
        CHECK(b.p_oob() / b.p_inband == doctest::Approx(2.0).epsilon(0.02));
        CHECK(b.p_oob_lower / b.p_oob_upper == doctest::Approx(1.0).epsilon(0.03));
        CHECK(b.p_inband + b.p_oob() == doctest::Approx(mean_power(s)).epsilon(1e-12));
        CHECK_FALSE(b.truncated);
    }
    SUBCASE("wider sample rate leaves far-out power outside") {
        const auto s = gen_complex_gaussian(1.0, 1 << 16, 3, 5 * bw);
        const auto b = inband_oob_split(s, bw, 4096);
        CHECK(b.p_inband + b.p_oob() < mean_power(s));
    }
    SUBCASE("adjacent channel beyond Nyquist") {
        const auto s = gen_complex_gaussian(1.0, 1 << 12, 3, 2 * bw);
        CHECK(inband_oob_split(s, bw, 1024).truncated);
        CHECK(adjacent_channels_truncated(bw, 2 * bw));
        CHECK_FALSE(adjacent_channels_truncated(bw, 3 * bw));
        CHECK_THROWS_AS(inband_oob_split(s, 2 * bw, 1024), ValidationError);
    }
}

TEST_CASE("OOB-to-inband ratio grows about 2 dB per dB of drive for a weak cubic") {
    OfdmConfig cfg;
    const auto pa = pa_preset("cubic");
    double ratio_db[2];
    for (int i = 0; i < 2; ++i) {
        // whole circular record as one segment: no estimator leakage floor
        const auto s = gen_ofdm(cfg, from_db(-1.0 + i), 4);
        const auto b = inband_oob_split(apply_baseband_polynomial(s, pa), 20e6, s.size());
        ratio_db[i] = to_db(b.p_oob() / b.p_inband);
    }
    CHECK(ratio_db[1] - ratio_db[0] == doctest::Approx(2.0).epsilon(0.1));
}

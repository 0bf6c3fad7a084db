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

#include "oobsim/analysis.hpp"

#include <cmath>
#include <vector>

#include "oobsim/error.hpp"
#include "oobsim/random.hpp"
#include "parallel.hpp"

namespace oobsim {

DistortionTerms decompose_third_order(const ComplexSignal& s1, const ComplexSignal& s2, cplx alpha) {
    require_same_format(s1, s2);
    const std::size_t n = s1.size();
    DistortionTerms t;
    for (auto* sig : {&t.z1, &t.z2, &t.u1, &t.u2}) {
        sig->sample_rate = s1.sample_rate;
        sig->samples.resize(n);
    }
    const cplx c_cross = 1.5 * alpha;
    const cplx c_self = 0.75 * alpha;
    for (std::size_t i = 0; i < n; ++i) {
        const cplx a = s1.samples[i];
        const cplx b = s2.samples[i];
        const double pa = std::norm(a);
        const double pb = std::norm(b);
        t.z1.samples[i] = (c_cross * pb + c_self * pa) * a;
        t.z2.samples[i] = (c_cross * pa + c_self * pb) * b;
        t.u1.samples[i] = c_self * std::conj(a) * b * b;
        t.u2.samples[i] = c_self * a * a * std::conj(b);
    }
    return t;
}

TermPowers analytic_term_powers(double p1, double p2, double alpha_mag) {
    if (!(p1 > 0.0) || !(p2 > 0.0)) throw ValidationError("user powers must be positive");
    const double a2 = alpha_mag * alpha_mag;
    // z1 = alpha (3/2 s1|s2|^2 + 3/4 s1|s1|^2), independent circular users:
    //   E|3/2 s1|s2|^2|^2                     = 9/4  * P1 * 2 P2^2
    //   E|3/4 s1|s1|^2|^2                     = 9/16 * 6 P1^3
    //   2 Re E[3/2 s1|s2|^2 conj(3/4 s1|s1|^2)] = 9/4 * 2 P1^2 * P2
    auto pz = [&](double pa, double pb) {
        return a2 * (4.5 * pa * pb * pb + 3.375 * pa * pa * pa + 4.5 * pa * pa * pb);
    };
    // u1 = alpha 3/4 conj(s1) s2^2: 9/16 * P1 * 2 P2^2.
    auto pv = [&](double pa, double pb) { return a2 * 1.125 * pa * pb * pb; };
    return TermPowers{pz(p1, p2), pz(p2, p1), pv(p1, p2), pv(p2, p1)};
}

double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

GainResult beamforming_gain_closed_form(int n_antennas, double sigma, DeviationFamily family) {
    if (n_antennas < 1) throw ValidationError("n_antennas must be >= 1");
    if (!(sigma >= 0.0)) throw ValidationError("sigma must be non-negative");
    const double m = n_antennas;
    double coherence = 1.0;
    switch (family) {
    case DeviationFamily::none: coherence = 1.0; break;
    case DeviationFamily::gaussian: coherence = std::exp(-sigma * sigma); break;
    case DeviationFamily::uniform: {
        const double s = sinc(sigma);
        coherence = s * s;
        break;
    }
    }
    GainResult r;
    r.gain = m + (m * m - m) * coherence;
    r.family = family;
    r.sigma = sigma;
    r.n_antennas = n_antennas;
    return r;
}

GainResult beamforming_gain_monte_carlo(int n_antennas, double sigma, DeviationFamily family, int trials,
                                        std::uint64_t seed) {
    if (n_antennas < 1) throw ValidationError("n_antennas must be >= 1");
    if (trials < 100) throw ValidationError("Monte Carlo gain needs at least 100 trials");
    const PhaseDeviationSpec spec{family, sigma};
    std::vector<double> samples(static_cast<std::size_t>(trials));
    detail::parallel_for(samples.size(), [&](std::size_t t) {
        const auto psi = draw_phase_deviations(n_antennas, spec, substream_seed(seed, t));
        double re = 0.0, im = 0.0;
        for (double p : psi) {
            re += std::cos(p);
            im += std::sin(p);
        }
        samples[t] = re * re + im * im;
    });

    double mean = 0.0;
    for (double g : samples) mean += g;
    mean /= trials;
    double var = 0.0;
    for (double g : samples) var += (g - mean) * (g - mean);
    var /= (trials - 1);

    GainResult r;
    r.gain = mean;
    r.family = family;
    r.sigma = sigma;
    r.n_antennas = n_antennas;
    r.trials = trials;
    r.std_error = std::sqrt(var / trials);
    r.half_width = 2.5758293035489004 * r.std_error;
    return r;
}

double received_distortion_power(int n_antennas, double sigma, DeviationFamily family, double power,
                                 double alpha_mag, BeamLocation location) {
    const TermPowers tp = analytic_term_powers(power, power, alpha_mag);
    const double term = location == BeamLocation::main_beam ? tp.p_z1 : tp.p_v1;
    return term * beamforming_gain_closed_form(n_antennas, sigma, family).gain;
}

Band classify_frequency(double freq, double channel_bw) {
    const double h = channel_bw / 2;
    if (freq >= -h && freq < h) return Band::inband;
    if (freq >= -3 * h && freq < -h) return Band::oob_lower;
    if (freq >= h && freq < 3 * h) return Band::oob_upper;
    return Band::outside;
}

bool adjacent_channels_truncated(double channel_bw, double sample_rate) {
    return 1.5 * channel_bw > sample_rate / 2;
}

BandSplit inband_oob_split(const SpectrumEstimate& spectrum, double channel_bw) {
    if (!(channel_bw > 0.0) || !(channel_bw < spectrum.sample_rate))
        throw ValidationError("channel_bw must be in (0, sample_rate)");
    BandSplit out;
    out.truncated = adjacent_channels_truncated(channel_bw, spectrum.sample_rate);
    for (std::size_t k = 0; k < spectrum.psd.size(); ++k) {
        switch (classify_frequency(spectrum.frequencies[k], channel_bw)) {
        case Band::inband: out.p_inband += spectrum.psd[k]; break;
        case Band::oob_lower: out.p_oob_lower += spectrum.psd[k]; break;
        case Band::oob_upper: out.p_oob_upper += spectrum.psd[k]; break;
        case Band::outside: break;
        }
    }
    return out;
}

BandSplit inband_oob_split(const ComplexSignal& signal, double channel_bw, std::size_t segment_len) {
    return inband_oob_split(power_spectrum(signal, segment_len), channel_bw);
}

} // namespace oobsim

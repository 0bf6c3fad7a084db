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

#include "oobsim/waveform.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "oobsim/error.hpp"
#include "oobsim/fft.hpp"
#include "oobsim/random.hpp"

namespace oobsim {

void validate(const OfdmConfig& cfg) {
    if (cfg.n_fft < 2) throw ConfigError("must be at least 2", "ofdm.n_fft");
    if (cfg.n_active < 1 || cfg.n_active >= cfg.n_fft)
        throw ConfigError("must satisfy 0 < n_active < n_fft", "ofdm.n_active");
    if (!(cfg.subcarrier_spacing > 0.0)) throw ConfigError("must be positive", "ofdm.subcarrier_spacing");
    if (cfg.oversampling_factor < 1) throw ConfigError("must be >= 1", "ofdm.oversampling_factor");
    if (cfg.cp_len < 0) throw ConfigError("must be >= 0", "ofdm.cp_len");
    if (cfg.window_len < 0 || (cfg.window_len > 0 && cfg.window_len >= cfg.cp_len))
        throw ConfigError("must be shorter than the cyclic prefix", "ofdm.window_len");
    if (cfg.n_symbols < 1) throw ConfigError("must be >= 1", "ofdm.n_symbols");
}

RealSignal gen_two_tone_passband(double f1, double f2, double phi1, double phi2, double sample_rate,
                                 std::size_t n_samples) {
    if (!(f1 > 0.0) || !(f2 > 0.0)) throw ConfigError("tone frequencies must be positive", "two_tone");
    if (!(sample_rate > 0.0)) throw ConfigError("must be positive", "two_tone.sample_rate");

    // Every product a cubic can create from two tones.
    const std::array<std::pair<const char*, double>, 8> products{{
        {"f1", f1},
        {"f2", f2},
        {"2f2-f1", std::abs(2 * f2 - f1)},
        {"2f1-f2", std::abs(2 * f1 - f2)},
        {"2f1+f2", 2 * f1 + f2},
        {"2f2+f1", 2 * f2 + f1},
        {"3f1", 3 * f1},
        {"3f2", 3 * f2},
    }};
    for (const auto& [name, f] : products) {
        if (!(f < sample_rate / 2)) {
            std::ostringstream msg;
            msg << "intermodulation product " << name << " = " << f << " Hz aliases at sample rate "
                << sample_rate << " Hz";
            throw ConfigError(msg.str(), "two_tone.sample_rate");
        }
    }

    RealSignal out;
    out.sample_rate = sample_rate;
    out.samples.resize(n_samples);
    const double w1 = 2 * std::numbers::pi * f1 / sample_rate;
    const double w2 = 2 * std::numbers::pi * f2 / sample_rate;
    for (std::size_t n = 0; n < n_samples; ++n) {
        const double t = static_cast<double>(n);
        out.samples[n] = std::cos(w1 * t + phi1) + std::cos(w2 * t + phi2);
    }
    return out;
}

ComplexSignal gen_complex_gaussian(double power, std::size_t n_samples, std::uint64_t seed,
                                   double sample_rate) {
    if (!(power > 0.0)) throw ValidationError("power must be positive");
    if (!(sample_rate > 0.0)) throw ValidationError("sample_rate must be positive");
    Engine rng = make_engine(seed, 0);
    std::normal_distribution<double> normal(0.0, std::sqrt(power / 2.0));
    ComplexSignal out;
    out.sample_rate = sample_rate;
    out.samples.resize(n_samples);
    for (auto& s : out.samples) {
        const double re = normal(rng);
        const double im = normal(rng);
        s = {re, im};
    }
    return out;
}

ComplexSignal gen_ofdm(const OfdmConfig& cfg, double power, std::uint64_t seed, std::size_t n_samples) {
    validate(cfg);
    if (!(power > 0.0)) throw ValidationError("power must be positive");

    const auto os = static_cast<std::size_t>(cfg.oversampling_factor);
    const std::size_t fft_len = static_cast<std::size_t>(cfg.n_fft) * os;
    const std::size_t cp = static_cast<std::size_t>(cfg.cp_len) * os;
    const std::size_t win = static_cast<std::size_t>(cfg.window_len) * os;
    const std::size_t stride = cp + fft_len;

    std::size_t n_symbols = static_cast<std::size_t>(cfg.n_symbols);
    if (n_samples > 0) n_symbols = (n_samples + stride - 1) / stride;
    const std::size_t total = n_symbols * stride;

    // Active bins straddle DC, which stays empty.
    const int n_neg = cfg.n_active / 2;
    const int n_pos = cfg.n_active - n_neg;

    std::vector<double> ramp(win);
    for (std::size_t i = 0; i < win; ++i)
        ramp[i] = 0.5 * (1.0 - std::cos(std::numbers::pi * (static_cast<double>(i) + 0.5) / static_cast<double>(win)));

    Engine rng = make_engine(seed, 1);
    std::uniform_int_distribution<int> bit(0, 1);
    const double q = 1.0 / std::numbers::sqrt2;

    FftPlan ifft(fft_len, FftPlan::Direction::inverse);
    std::vector<cplx> stream(total);

    for (std::size_t sym = 0; sym < n_symbols; ++sym) {
        auto bins = ifft.input();
        std::fill(bins.begin(), bins.end(), cplx{});
        auto load = [&](int k) {
            const double re = bit(rng) ? q : -q;
            const double im = bit(rng) ? q : -q;
            const auto idx = static_cast<std::size_t>((k + static_cast<long>(fft_len)) % static_cast<long>(fft_len));
            bins[idx] = {re, im};
        };
        for (int k = -n_neg; k <= -1; ++k) load(k);
        for (int k = 1; k <= n_pos; ++k) load(k);
        ifft.execute();
        const auto body = ifft.output();

        const std::size_t start = sym * stride;
        const std::size_t ext_len = cp + fft_len + win;
        for (std::size_t i = 0; i < ext_len; ++i) {
            double w = 1.0;
            if (i < win) w = ramp[i];
            else if (i >= cp + fft_len) w = 1.0 - ramp[i - cp - fft_len];
            const std::size_t src = (i + fft_len - cp % fft_len) % fft_len;
            stream[(start + i) % total] += w * body[src];
        }
    }

    ComplexSignal out;
    out.sample_rate = cfg.sample_rate();
    if (n_samples > 0) stream.resize(n_samples);
    out.samples = std::move(stream);
    scale_to_power(out, power);
    return out;
}

ComplexSignal gen_complex_tone(double freq, double sample_rate, std::size_t n_samples, double phase) {
    if (!(sample_rate > 0.0)) throw ValidationError("sample_rate must be positive");
    ComplexSignal out;
    out.sample_rate = sample_rate;
    out.samples.resize(n_samples);
    const double w = 2 * std::numbers::pi * freq / sample_rate;
    for (std::size_t n = 0; n < n_samples; ++n) out.samples[n] = std::polar(1.0, w * static_cast<double>(n) + phase);
    return out;
}

ComplexSignal compose_dual_carrier(const ComplexSignal& s1, const ComplexSignal& s2, double delta1,
                                   double delta2) {
    require_same_format(s1, s2);
    const auto c1 = gen_complex_tone(delta1, s1.sample_rate, s1.size());
    const auto c2 = gen_complex_tone(delta2, s1.sample_rate, s1.size());
    ComplexSignal out;
    out.sample_rate = s1.sample_rate;
    out.samples.resize(s1.size());
    for (std::size_t n = 0; n < s1.size(); ++n)
        out.samples[n] = s1.samples[n] * c1.samples[n] + s2.samples[n] * c2.samples[n];
    return out;
}

double sample_moments(const ComplexSignal& signal, int order) {
    if (order != 2 && order != 4 && order != 6)
        throw ValidationError("sample_moments supports orders 2, 4 and 6");
    if (signal.samples.empty()) throw ValidationError("empty signal");
    double acc = 0.0;
    for (const cplx& s : signal.samples) {
        const double p = std::norm(s);
        acc += order == 2 ? p : order == 4 ? p * p : p * p * p;
    }
    return acc / static_cast<double>(signal.size());
}

void scale_to_power(ComplexSignal& signal, double power) {
    const double current = mean_power(signal);
    if (!(current > 0.0)) throw ValidationError("cannot scale a zero-power signal");
    const double g = std::sqrt(power / current);
    for (auto& s : signal.samples) s *= g;
}

} // namespace oobsim

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

#include "oobsim/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "json.hpp"
#include "oobsim/analysis.hpp"
#include "oobsim/csv.hpp"
#include "oobsim/error.hpp"
#include "oobsim/fft.hpp"
#include "oobsim/random.hpp"
#include "oobsim/spectrum.hpp"
#include "oobsim/version.hpp"
#include "oobsim/waveform.hpp"
#include "manifest.hpp"

namespace oobsim {
namespace {

double line_error(double expected, double measured) {
    const double diff = std::abs(measured - expected);
    return expected == 0.0 ? diff : diff / std::abs(expected);
}

void require_on_bin(double freq, double fs, std::size_t n, const char* field) {
    const double k = freq * static_cast<double>(n) / fs;
    if (std::abs(k - std::round(k)) > 1e-9)
        throw ConfigError("frequency " + format_double(freq) + " Hz does not fall on an FFT bin of the record",
                          field);
}

void two_tone_passband(const TwoToneSettings& t, double alpha, TwoToneResult& out) {
    require_on_bin(t.f1, t.sample_rate, t.n_samples, "waveform.two_tone.f1");
    require_on_bin(t.f2, t.sample_rate, t.n_samples, "waveform.two_tone.f2");
    const RealSignal x = gen_two_tone_passband(t.f1, t.f2, t.phi1, t.phi2, t.sample_rate, t.n_samples);
    const RealSignal y = apply_passband_polynomial(x, alpha);

    for (const auto& l : line_spectrum(y, 1e-12)) out.lines.push_back({alpha, l.frequency, l.amplitude});

    auto check = [&](const char* name, double f, double expected) {
        const double got = tone_amplitude(y, f);
        out.checks.push_back({alpha, name, f, expected, got, line_error(expected, got)});
    };
    check("fundamental_1", t.f1, std::abs(1.0 + 9.0 * alpha / 4.0));
    check("fundamental_2", t.f2, std::abs(1.0 + 9.0 * alpha / 4.0));
    check("im3_upper", 2 * t.f2 - t.f1, 3.0 * std::abs(alpha) / 4.0);
    check("im3_lower", 2 * t.f1 - t.f2, 3.0 * std::abs(alpha) / 4.0);
}

void two_tone_dual_carrier(const TwoToneSettings& t, double alpha, TwoToneResult& out) {
    const double fs = t.baseband_rate;
    const std::size_t n = t.n_samples;
    const double im_hi = 2 * t.delta2 - t.delta1;
    const double im_lo = 2 * t.delta1 - t.delta2;
    for (double f : {t.delta1, t.delta2, im_hi, im_lo})
        if (!(std::abs(f) < fs / 2))
            throw ConfigError("product at " + format_double(f) + " Hz exceeds the baseband Nyquist limit",
                              "waveform.two_tone.baseband_rate");
    require_on_bin(t.delta1, fs, n, "waveform.two_tone.delta1");
    require_on_bin(t.delta2, fs, n, "waveform.two_tone.delta2");

    ComplexSignal ones{std::vector<cplx>(n, cplx(1.0)), fs};
    ComplexSignal s1 = ones, s2 = ones;
    for (std::size_t i = 0; i < n; ++i) {
        s1.samples[i] = std::polar(1.0, t.phi1);
        s2.samples[i] = std::polar(1.0, t.phi2);
    }
    const ComplexSignal x = compose_dual_carrier(s1, s2, t.delta1, t.delta2);
    PaModel pa;
    pa.coeffs = {1.0, 3.0 * alpha / 4.0};
    const ComplexSignal y = apply_baseband_polynomial(x, pa);

    FftPlan fft(n, FftPlan::Direction::forward);
    const auto X = fft.transform(y.samples);
    std::vector<ToneLine> lines;
    for (std::size_t k = 0; k < n; ++k) {
        const double amp = std::abs(X[k]) / static_cast<double>(n);
        if (amp <= 1e-12) continue;
        const auto c = static_cast<double>(centered_bin(k, n)) - static_cast<double>(n / 2);
        lines.push_back({alpha, c * fs / static_cast<double>(n), amp});
    }
    std::sort(lines.begin(), lines.end(), [](const ToneLine& a, const ToneLine& b) { return a.frequency < b.frequency; });
    out.lines.insert(out.lines.end(), lines.begin(), lines.end());

    auto check = [&](const char* name, double f, double expected) {
        const double got = std::abs(tone_phasor(y, f));
        out.checks.push_back({alpha, name, f, expected, got, line_error(expected, got)});
    };
    check("fundamental_1", t.delta1, std::abs(1.0 + 9.0 * alpha / 4.0));
    check("fundamental_2", t.delta2, std::abs(1.0 + 9.0 * alpha / 4.0));
    check("im3_upper", im_hi, 3.0 * std::abs(alpha) / 4.0);
    check("im3_lower", im_lo, 3.0 * std::abs(alpha) / 4.0);
}

double waveform_rate(const ScenarioConfig& cfg) {
    return cfg.waveform.type == WaveformSettings::Type::ofdm ? cfg.waveform.ofdm.sample_rate()
                                                             : cfg.waveform.sample_rate;
}

BeamPattern scaled(BeamPattern p, double ref) {
    for (auto* v : {&p.p_total, &p.p_inband, &p.p_oob, &p.p_oob_lower, &p.p_oob_upper})
        for (double& x : *v) x /= ref;
    return p;
}

void write_pattern(const BeamPattern& p, const std::filesystem::path& path) {
    CsvWriter csv(path, {"angle_deg", "p_total_db", "p_inband_db", "p_oob_db"});
    for (std::size_t i = 0; i < p.size(); ++i)
        csv.row({p.angles[i], to_db(p.p_total[i]), to_db(p.p_inband[i]), to_db(p.p_oob[i])});
}

std::vector<double> sigma_grid(const GainCurveSettings& g) {
    const auto n = static_cast<std::size_t>(std::floor((g.sigma_max - g.sigma_min) / g.sigma_step + 1e-9)) + 1;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = g.sigma_min + static_cast<double>(i) * g.sigma_step;
    return out;
}

} // namespace

double TwoToneResult::max_error() const {
    double e = 0.0;
    for (const auto& c : checks) e = std::max(e, c.error);
    return e;
}

TwoToneResult run_two_tone(const ScenarioConfig& cfg) {
    const auto& t = cfg.waveform.two_tone;
    if (t.alphas.empty()) throw ConfigError("at least one alpha is required", "waveform.two_tone.alphas");
    if (t.n_samples == 0) throw ConfigError("must be positive", "waveform.two_tone.n_samples");
    TwoToneResult out;
    for (double alpha : t.alphas) {
        if (t.mode == TwoToneSettings::Mode::passband) {
            try {
                two_tone_passband(t, alpha, out);
            } catch (const ConfigError& e) {
                if (e.field().rfind("two_tone.", 0) != 0) throw;
                const std::string what = e.what();
                throw ConfigError(what.substr(e.field().size() + 2), "waveform." + e.field());
            }
        } else {
            two_tone_dual_carrier(t, alpha, out);
        }
    }
    return out;
}

std::vector<ComplexSignal> user_signals(const ScenarioConfig& cfg) {
    std::vector<ComplexSignal> out;
    const std::size_t n = cfg.waveform.n_samples;
    for (std::size_t l = 0; l < cfg.users.size(); ++l) {
        const std::uint64_t seed = substream_seed(cfg.waveform.seed, l);
        if (cfg.waveform.type == WaveformSettings::Type::ofdm) out.push_back(gen_ofdm(cfg.waveform.ofdm, 1.0, seed, n));
        else out.push_back(gen_complex_gaussian(1.0, n, seed, cfg.waveform.sample_rate));
    }
    return out;
}

BeampatternResult run_beampattern(const ScenarioConfig& cfg) {
    validate(cfg);
    if (cfg.outputs.per_term && cfg.users.size() != 2)
        throw ConfigError("per-term patterns need exactly two users", "outputs.per_term");

    BeampatternResult res;
    res.sample_rate = waveform_rate(cfg);
    res.input_power = resolve_input_power(cfg);

    std::vector<UserConfig> users;
    {
        auto signals = user_signals(cfg);
        for (std::size_t l = 0; l < cfg.users.size(); ++l)
            users.push_back({cfg.users[l].angle_deg, std::move(signals[l]), cfg.users[l].power});
    }
    const Precoded pre = precode(users, cfg.array, res.input_power);
    const PaBank bank = resolve_pa_bank(cfg);
    const auto grid = angle_grid(cfg.grid.min_deg, cfg.grid.max_deg, cfg.grid.step_deg);
    const std::size_t M = pre.antennas.size();

    {
        std::vector<ComplexSignal> amplified(M);
        for (std::size_t m = 0; m < M; ++m) amplified[m] = apply_baseband_polynomial(pre.antennas[m], bank.models[m]);
        res.pattern = beampattern(amplified, grid, cfg.channel_bw, cfg.array, cfg.segment_len);
    }

    if (cfg.outputs.normalization == OutputSettings::Normalization::user_inband) {
        double ref = 0.0;
        for (const auto& u : cfg.users) ref = std::max(ref, res.pattern.p_inband[nearest_index(grid, u.angle_deg)]);
        if (!(ref > 0.0)) throw ValidationError("inband power at the user directions is zero");
        res.reference = ref;
    }
    res.pattern = scaled(std::move(res.pattern), res.reference);

    if (cfg.outputs.per_term) {
        std::vector<std::vector<double>> phases;
        for (const auto& u : cfg.users) phases.push_back(steering_phases(u.angle_deg, cfg.array));
        // Each user's per-antenna component as it enters the PA.
        auto component = [&](std::size_t l, std::size_t m) {
            ComplexSignal s = users[l].signal;
            const cplx w = pre.user_gains[l] * std::polar(1.0, phases[l][m]);
            for (auto& v : s.samples) v *= w;
            return s;
        };
        for (const char* name : {"linear", "z1", "z2", "u1", "u2"}) {
            const std::string term(name);
            std::vector<ComplexSignal> sig(M);
            for (std::size_t m = 0; m < M; ++m) {
                if (term == "linear") {
                    sig[m] = pre.antennas[m];
                    for (auto& v : sig[m].samples) v *= bank.models[m].coeffs[0];
                    continue;
                }
                const cplx a = bank.models[m].coeffs.size() > 1 ? alpha_from_baseband(bank.models[m].coeffs[1]) : cplx{};
                auto d = decompose_third_order(component(0, m), component(1, m), a);
                sig[m] = term == "z1" ? std::move(d.z1) : term == "z2" ? std::move(d.z2)
                       : term == "u1" ? std::move(d.u1) : std::move(d.u2);
            }
            res.terms.emplace_back(term,
                                   scaled(beampattern(sig, grid, cfg.channel_bw, cfg.array, cfg.segment_len), res.reference));
        }
    }
    return res;
}

GainCurveResult run_gain_curve(const ScenarioConfig& cfg) {
    validate(cfg);
    GainCurveResult res;
    const int M = cfg.array.n_antennas;
    res.n_antennas = M;
    res.noncoherent_floor = 1.0 / std::sqrt(static_cast<double>(M));
    const double m2 = static_cast<double>(M);
    const auto sigmas = sigma_grid(cfg.gain_curve);
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        const double s = sigmas[i];
        const auto rel = [&](double g) { return std::sqrt(g) / m2; };
        const auto gg = beamforming_gain_closed_form(M, s, DeviationFamily::gaussian);
        const auto gu = beamforming_gain_closed_form(M, s, DeviationFamily::uniform);
        const auto mg = beamforming_gain_monte_carlo(M, s, DeviationFamily::gaussian, cfg.gain_curve.trials,
                                                     substream_seed(cfg.gain_curve.seed, 2 * i));
        const auto mu = beamforming_gain_monte_carlo(M, s, DeviationFamily::uniform, cfg.gain_curve.trials,
                                                     substream_seed(cfg.gain_curve.seed, 2 * i + 1));
        // Half-width carried through sqrt(G)/M to first order.
        const auto amp_hw = [&](const GainResult& r) {
            return r.gain > 0.0 ? r.half_width / (2.0 * m2 * std::sqrt(r.gain)) : 0.0;
        };
        res.rows.push_back({s, rel(gg.gain), rel(gu.gain), rel(mg.gain), rel(mu.gain),
                            std::max(amp_hw(mg), amp_hw(mu))});
    }
    return res;
}

std::vector<std::filesystem::path> write_two_tone(const TwoToneResult& r, const ScenarioConfig& cfg,
                                                  const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> files{dir / "two_tone.csv", dir / "two_tone_checks.csv"};
    {
        CsvWriter csv(files[0], {"alpha", "freq_hz", "amplitude"});
        for (const auto& l : r.lines) csv.row({l.alpha, l.frequency, l.amplitude});
    }
    {
        // Text column for the check name, so written by hand.
        std::ofstream out(files[1], std::ios::binary);
        out << "alpha,check,freq_hz,expected,measured,error\n";
        for (const auto& c : r.checks)
            out << format_double(c.alpha) << ',' << c.name << ',' << format_double(c.frequency) << ','
                << format_double(c.expected) << ',' << format_double(c.measured) << ',' << format_double(c.error)
                << '\n';
    }
    nlohmann::json extra = {{"max_line_error", r.max_error()}};
    files.push_back(detail::write_manifest(dir, "two-tone", cfg, files, extra));
    return files;
}

std::vector<std::filesystem::path> write_beampattern(const BeampatternResult& r, const ScenarioConfig& cfg,
                                                     const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> files{dir / "beampattern.csv", dir / "beampattern_oob_sides.csv"};
    write_pattern(r.pattern, files[0]);
    {
        CsvWriter csv(files[1], {"angle_deg", "p_oob_lower_db", "p_oob_upper_db"});
        const auto& p = r.pattern;
        for (std::size_t i = 0; i < p.size(); ++i)
            csv.row({p.angles[i], to_db(p.p_oob_lower[i]), to_db(p.p_oob_upper[i])});
    }
    for (const auto& [name, p] : r.terms) {
        files.push_back(dir / ("beampattern_" + name + ".csv"));
        write_pattern(p, files.back());
    }
    nlohmann::json extra = {{"input_power", r.input_power},
                            {"normalization_reference", r.reference},
                            {"sample_rate", r.sample_rate},
                            {"adjacent_channel_truncated", r.pattern.truncated}};
    files.push_back(detail::write_manifest(dir, "beampattern", cfg, files, extra));
    return files;
}

std::vector<std::filesystem::path> write_gain_curve(const GainCurveResult& r, const ScenarioConfig& cfg,
                                                    const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> files{dir / "gain_curve.csv"};
    {
        CsvWriter csv(files[0], {"sigma_rad", "rel_gain_gauss", "rel_gain_uniform", "rel_gain_gauss_mc",
                                 "rel_gain_uniform_mc", "mc_halfwidth"});
        for (const auto& row : r.rows)
            csv.row({row.sigma, row.rel_gauss, row.rel_uniform, row.rel_gauss_mc, row.rel_uniform_mc,
                     row.mc_halfwidth});
    }
    nlohmann::json extra = {{"n_antennas", r.n_antennas}, {"noncoherent_floor", r.noncoherent_floor}};
    files.push_back(detail::write_manifest(dir, "gain-curve", cfg, files, extra));
    return files;
}

} // namespace oobsim

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

#include "oobsim/validation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "manifest.hpp"
#include "oobsim/array.hpp"
#include "oobsim/csv.hpp"
#include "oobsim/error.hpp"
#include "oobsim/random.hpp"
#include "oobsim/scenarios.hpp"
#include "oobsim/spectrum.hpp"
#include "oobsim/waveform.hpp"

namespace oobsim {
namespace {

double rel_error(double expected, double got) {
    return expected == 0.0 ? std::abs(got) : std::abs(got - expected) / std::abs(expected);
}

class Runner {
public:
    explicit Runner(ValidationReport& report) : report_(report) {}

    // fn fills analytic/simulated/error/tolerance; pass/fail is decided here.
    template <typename Fn>
    void add(std::string name, Fn&& fn) {
        ValidationCheck c;
        c.name = std::move(name);
        try {
            fn(c);
            c.passed = std::isfinite(c.error) && c.error <= c.tolerance;
        } catch (const std::exception& e) {
            c.passed = false;
            c.detail = std::string("exception: ") + e.what();
        }
        report_.checks.push_back(std::move(c));
    }

private:
    ValidationReport& report_;
};

std::string sigma_label(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", s);
    return buf;
}

std::string quoted(const std::string& text) {
    std::string out = "\"";
    for (char ch : text) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + '"';
}

ComplexSignal steered(const ComplexSignal& s, double gain, double phase) {
    ComplexSignal out = s;
    const cplx w = gain * std::polar(1.0, phase);
    for (auto& v : out.samples) v *= w;
    return out;
}

} // namespace

bool ValidationReport::passed() const { return failures() == 0; }

std::size_t ValidationReport::failures() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.passed; }));
}

const ValidationCheck* ValidationReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

MainBeamPower main_beam_distortion(const ArrayConfig& array, double theta1_deg, double theta2_deg,
                                   double alpha_bb, double input_power, std::size_t n_samples,
                                   std::uint64_t seed) {
    validate(array);
    if (n_samples == 0) throw ValidationError("n_samples must be positive");
    if (!(input_power > 0.0)) throw ValidationError("input power must be positive");
    const double p = input_power / 2.0;
    ComplexSignal s1 = gen_complex_gaussian(p, n_samples, substream_seed(seed, 0));
    ComplexSignal s2 = gen_complex_gaussian(p, n_samples, substream_seed(seed, 1));
    scale_to_power(s1, p);
    scale_to_power(s2, p);

    const auto ph1 = steering_phases(theta1_deg, array);
    const auto ph2 = steering_phases(theta2_deg, array);
    const std::size_t M = ph1.size();
    std::vector<cplx> e1(M), e2(M);
    for (std::size_t m = 0; m < M; ++m) {
        e1[m] = std::polar(1.0, ph1[m]);
        e2[m] = std::polar(1.0, ph2[m]);
    }

    double acc = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        cplx r{};
        for (std::size_t m = 0; m < M; ++m) {
            const cplx x = s1.samples[i] * e1[m] + s2.samples[i] * e2[m];
            // Receiver in direction 1 undoes user 1's steering phase.
            r += std::conj(e1[m]) * (x * std::norm(x));
        }
        acc += std::norm(alpha_bb * r);
    }

    MainBeamPower out;
    out.per_user_power = p;
    out.simulated = acc / static_cast<double>(n_samples);
    const double a = alpha_from_baseband(std::abs(alpha_bb));
    const double m = static_cast<double>(M);
    out.analytic = 99.0 / 8.0 * a * a * p * p * p * m * m;
    return out;
}

ValidationReport run_validation(const ScenarioConfig& cfg, const ValidationHooks& hooks) {
    validate(cfg);
    const auto& v = cfg.validation;
    ValidationReport report;
    Runner run(report);
    std::uint64_t stream = 0;
    auto next_seed = [&] { return substream_seed(v.seed, stream++); };

    // Gaussian moments.
    {
        const auto s = gen_complex_gaussian(1.0, v.moment_samples, next_seed());
        const double p = mean_power(s);
        run.add("gaussian_moment_4", [&](ValidationCheck& c) {
            c.analytic = 2.0;
            c.simulated = sample_moments(s, 4) / (p * p);
            c.error = rel_error(c.analytic, c.simulated);
            c.tolerance = 0.02;
        });
        run.add("gaussian_moment_6", [&](ValidationCheck& c) {
            c.analytic = 6.0;
            c.simulated = sample_moments(s, 6) / (p * p * p);
            c.error = rel_error(c.analytic, c.simulated);
            c.tolerance = 0.04;
        });
    }

    const auto parseval_seed = next_seed();
    run.add("parseval", [&](ValidationCheck& c) {
        const auto s = gen_complex_gaussian(1.0, 1 << 16, parseval_seed, 3 * cfg.channel_bw);
        c.analytic = mean_power(s);
        c.simulated = power_spectrum(s, cfg.segment_len).total_power();
        c.error = rel_error(c.analytic, c.simulated);
        c.tolerance = 1e-9;
    });

    const auto ofdm_seed = next_seed();
    {
        ComplexSignal ofdm;
        std::string failure;
        try {
            ofdm = gen_ofdm(cfg.waveform.ofdm, 1.0, ofdm_seed, cfg.waveform.n_samples);
        } catch (const std::exception& e) {
            failure = e.what();
        }
        run.add("ofdm_power", [&](ValidationCheck& c) {
            if (!failure.empty()) throw std::runtime_error(failure);
            c.analytic = 1.0;
            c.simulated = mean_power(ofdm);
            c.error = rel_error(c.analytic, c.simulated);
            c.tolerance = 1e-9;
        });
        run.add("ofdm_kurtosis", [&](ValidationCheck& c) {
            if (!failure.empty()) throw std::runtime_error(failure);
            const double p = mean_power(ofdm);
            c.analytic = 2.0;
            c.simulated = sample_moments(ofdm, 4) / (p * p);
            c.error = rel_error(c.analytic, c.simulated);
            c.tolerance = 0.05;
        });
    }

    for (const auto mode : {TwoToneSettings::Mode::passband, TwoToneSettings::Mode::dual_carrier}) {
        const bool pb = mode == TwoToneSettings::Mode::passband;
        run.add(pb ? "two_tone_passband_lines" : "two_tone_dual_carrier_lines", [&](ValidationCheck& c) {
            ScenarioConfig tc = cfg;
            tc.waveform.two_tone.mode = mode;
            const auto r = run_two_tone(tc);
            c.analytic = 0.0;
            c.simulated = r.max_error();
            c.error = r.max_error();
            c.tolerance = 1e-9;
            c.detail = "largest relative line-amplitude error";
        });
    }

    const auto decomp_seed = next_seed();
    run.add("decomposition_identity", [&](ValidationCheck& c) {
        const auto s1 = gen_complex_gaussian(1.0, 1 << 16, substream_seed(decomp_seed, 0));
        const auto s2 = gen_complex_gaussian(0.5, 1 << 16, substream_seed(decomp_seed, 1));
        const cplx a = alpha_from_baseband(cplx(kCubicAlpha, 0.01));
        const auto d = decompose_third_order(s1, s2, a);
        double worst = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < s1.size(); ++i) {
            const cplx x = s1.samples[i] + s2.samples[i];
            const cplx rhs = 0.75 * a * std::norm(x) * x;
            const cplx lhs = d.z1.samples[i] + d.z2.samples[i] + d.u1.samples[i] + d.u2.samples[i];
            worst = std::max(worst, std::abs(lhs - rhs));
            scale = std::max(scale, std::abs(rhs));
        }
        c.analytic = 0.0;
        c.simulated = worst / scale;
        c.error = c.simulated;
        c.tolerance = 1e-12;
    });

    // Term powers, unequal users to exercise the general expressions.
    {
        const double p1 = 1.0, p2 = 0.5;
        const auto tp_seed = next_seed();
        const auto s1 = gen_complex_gaussian(p1, v.moment_samples, substream_seed(tp_seed, 0));
        const auto s2 = gen_complex_gaussian(p2, v.moment_samples, substream_seed(tp_seed, 1));
        const auto d = decompose_third_order(s1, s2, cplx(1.0));
        const auto an = analytic_term_powers(p1, p2, 1.0);
        const std::pair<const char*, std::pair<double, const ComplexSignal*>> terms[] = {
            {"term_power_z1", {an.p_z1, &d.z1}},
            {"term_power_z2", {an.p_z2, &d.z2}},
            {"term_power_u1", {an.p_v1, &d.u1}},
            {"term_power_u2", {an.p_v2, &d.u2}},
        };
        for (const auto& [name, t] : terms) {
            run.add(name, [&](ValidationCheck& c) {
                c.analytic = t.first;
                c.simulated = mean_power(*t.second);
                c.error = rel_error(c.analytic, c.simulated);
                c.tolerance = 0.02;
            });
        }
    }

    const auto ratio_seed = next_seed();
    run.add("coherent_to_spurious_ratio", [&](ValidationCheck& c) {
        const auto s1 = gen_complex_gaussian(1.0, v.moment_samples, substream_seed(ratio_seed, 0));
        const auto s2 = gen_complex_gaussian(1.0, v.moment_samples, substream_seed(ratio_seed, 1));
        const auto d = decompose_third_order(s1, s2, cplx(1.0));
        const auto an = analytic_term_powers(1.0, 1.0, 1.0);
        c.analytic = an.p_z1 / an.p_v1;
        c.simulated = mean_power(d.z1) / mean_power(d.u1);
        c.error = rel_error(c.analytic, c.simulated);
        c.tolerance = 0.03;
        c.detail = "P_z / P_v at equal user power";
    });

    run.add("ratio_invariance", [&](ValidationCheck& c) {
        double worst = 0.0;
        for (int M : v.gain_antennas)
            for (double s : v.gain_sigmas)
                for (auto f : {DeviationFamily::gaussian, DeviationFamily::uniform}) {
                    const double main = received_distortion_power(M, s, f, 1.0, 1.0, BeamLocation::main_beam);
                    const double spur = received_distortion_power(M, s, f, 1.0, 1.0, BeamLocation::spurious);
                    worst = std::max(worst, rel_error(11.0, main / spur));
                }
        c.analytic = 11.0;
        c.simulated = 11.0 * (1.0 + worst);
        c.error = worst;
        c.tolerance = 1e-12;
    });

    // Monte Carlo against closed form.
    for (int M : v.gain_antennas)
        for (double s : v.gain_sigmas)
            for (auto f : {DeviationFamily::gaussian, DeviationFamily::uniform}) {
                const auto seed = next_seed();
                const std::string name =
                    "mc_gain_" + std::string(to_string(f)) + "_M" + std::to_string(M) + "_sigma" + sigma_label(s);
                run.add(name, [&](ValidationCheck& c) {
                    const auto cf = hooks.closed_form_gain(M, s, f);
                    const auto mc = beamforming_gain_monte_carlo(M, s, f, v.mc_trials, seed);
                    c.analytic = cf.gain;
                    c.simulated = mc.gain;
                    const double diff = std::abs(mc.gain - cf.gain);
                    if (mc.std_error > 0.0) c.error = diff / mc.std_error;
                    else c.error = diff <= 1e-9 * std::max(1.0, cf.gain) ? 0.0 : INFINITY;
                    c.tolerance = 3.0;
                    c.detail = "error in standard errors";
                });
            }

    run.add("gain_bounds_and_monotonicity", [&](ValidationCheck& c) {
        int violations = 0;
        for (int M : v.gain_antennas) {
            const double m = M;
            double prev = INFINITY;
            for (int i = 0; i <= 80; ++i) {
                const double s = 0.05 * i;
                for (auto f : {DeviationFamily::gaussian, DeviationFamily::uniform}) {
                    const double g = hooks.closed_form_gain(M, s, f).gain;
                    if (g < m * (1 - 1e-12) || g > m * m * (1 + 1e-12)) ++violations;
                    if (f == DeviationFamily::gaussian) {
                        if (g > prev * (1 + 1e-12)) ++violations;
                        prev = g;
                    }
                }
            }
        }
        c.analytic = 0.0;
        c.simulated = violations;
        c.error = violations;
        c.tolerance = 0.0;
        c.detail = "count of bound or monotonicity violations";
    });

    // Spurious directions from the argmax of each intermodulation term alone.
    if (cfg.users.size() == 2) {
        const auto dir_seed = next_seed();
        const double t1 = cfg.users[0].angle_deg, t2 = cfg.users[1].angle_deg;
        const auto grid = angle_grid(cfg.grid.min_deg, cfg.grid.max_deg, cfg.grid.step_deg);
        const auto images = intermod_directions(t1, t2, 3, cfg.array);
        for (int which = 1; which <= 2; ++which) {
            run.add("spurious_direction_" + std::to_string(which), [&](ValidationCheck& c) {
                // u1 = conj(s1) s2^2 and u2 = s1^2 conj(s2).
                const int a = which == 1 ? -1 : 2, b = which == 1 ? 2 : -1;
                const auto pair = spurious_directions(t1, t2);
                std::optional<double> expect = which == 1 ? pair.first : pair.second;
                if (!expect)
                    for (const auto& im : images)
                        if (im.a == a && im.b == b) {
                            expect = im.angle_deg;
                            c.detail = "grating image";
                            break;
                        }
                if (!expect) throw std::runtime_error("no visible direction for this term");

                const std::size_t n = v.direction_samples;
                const double fs = 3 * cfg.channel_bw;
                const auto s1 = gen_complex_gaussian(1.0, n, substream_seed(dir_seed, 0), fs);
                const auto s2 = gen_complex_gaussian(1.0, n, substream_seed(dir_seed, 1), fs);
                const auto ph1 = steering_phases(t1, cfg.array);
                const auto ph2 = steering_phases(t2, cfg.array);
                std::vector<ComplexSignal> ant;
                for (std::size_t m = 0; m < ph1.size(); ++m) {
                    auto d = decompose_third_order(steered(s1, 1.0, ph1[m]), steered(s2, 1.0, ph2[m]), cplx(1.0));
                    ant.push_back(which == 1 ? std::move(d.u1) : std::move(d.u2));
                }
                const auto bp = beampattern(ant, grid, cfg.channel_bw, cfg.array, std::min(cfg.segment_len, n));
                const auto it = std::max_element(bp.p_total.begin(), bp.p_total.end());
                c.analytic = *expect;
                c.simulated = grid[static_cast<std::size_t>(it - bp.p_total.begin())];
                c.error = std::abs(c.simulated - c.analytic);
                c.tolerance = cfg.grid.step_deg + 1e-9; // within one grid step
                if (c.detail.empty()) c.detail = "degrees";
            });
        }

        const auto mb_seed = next_seed();
        run.add("main_beam_distortion_power", [&](ValidationCheck& c) {
            const PaModel cubic = pa_preset("cubic");
            const double sat = saturation_level(cubic);
            const double pin = sat * sat / from_db(cfg.operating_point.backoff_db);
            const auto r = main_beam_distortion(cfg.array, t1, t2, cubic.coeffs[1].real(), pin, v.power_samples, mb_seed);
            c.analytic = r.analytic;
            c.simulated = r.simulated;
            c.error = rel_error(r.analytic, r.simulated);
            c.tolerance = 0.02;
            c.detail = "cubic PA, no clipping, no phase deviation";
        });
    }

    {
        const int M = cfg.array.n_antennas;
        const double m = M;
        const double floor_amp = 1.0 / std::sqrt(m);
        auto rel = [&](double s, DeviationFamily f) { return std::sqrt(hooks.closed_form_gain(M, s, f).gain) / m; };
        run.add("gain_curve_coherent_endpoint", [&](ValidationCheck& c) {
            c.analytic = 1.0;
            c.simulated = std::min(rel(0.0, DeviationFamily::gaussian), rel(0.0, DeviationFamily::uniform));
            c.error = std::max(rel_error(1.0, rel(0.0, DeviationFamily::gaussian)),
                               rel_error(1.0, rel(0.0, DeviationFamily::uniform)));
            c.tolerance = 1e-12;
        });
        run.add("gain_curve_uniform_pi_floor", [&](ValidationCheck& c) {
            c.analytic = floor_amp;
            c.simulated = rel(std::numbers::pi, DeviationFamily::uniform);
            c.error = rel_error(c.analytic, c.simulated);
            c.tolerance = 0.02;
        });
        run.add("gain_curve_gaussian_floor", [&](ValidationCheck& c) {
            c.analytic = floor_amp;
            c.simulated = rel(4.0, DeviationFamily::gaussian);
            c.error = rel_error(c.analytic, c.simulated);
            c.tolerance = 0.02;
        });
    }

    const auto split_seed = next_seed();
    run.add("band_split_conservation", [&](ValidationCheck& c) {
        const auto s = gen_complex_gaussian(1.0, 1 << 18, split_seed, 3 * cfg.channel_bw);
        const auto sp = power_spectrum(s, cfg.segment_len);
        const auto b = inband_oob_split(sp, cfg.channel_bw);
        c.analytic = sp.total_power();
        c.simulated = b.p_inband + b.p_oob();
        c.error = rel_error(c.analytic, c.simulated);
        c.tolerance = 1e-9;
    });
    run.add("band_split_white_ratio", [&](ValidationCheck& c) {
        const auto s = gen_complex_gaussian(1.0, 1 << 18, split_seed, 3 * cfg.channel_bw);
        const auto b = inband_oob_split(s, cfg.channel_bw, cfg.segment_len);
        c.analytic = 2.0;
        c.simulated = b.p_oob() / b.p_inband;
        c.error = rel_error(c.analytic, c.simulated);
        c.tolerance = 0.02;
    });

    return report;
}

std::vector<std::filesystem::path> write_validation(const ValidationReport& r, const ScenarioConfig& cfg,
                                                    const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> files{dir / "validation.csv"};
    {
        std::ofstream out(files[0], std::ios::binary);
        out << "check,analytic,simulated,error,tolerance,passed,detail\n";
        for (const auto& c : r.checks)
            out << c.name << ',' << format_double(c.analytic) << ',' << format_double(c.simulated) << ','
                << format_double(c.error) << ',' << format_double(c.tolerance) << ',' << (c.passed ? "true" : "false")
                << ',' << quoted(c.detail) << '\n';
        if (!out) throw std::runtime_error("cannot write " + files[0].string());
    }
    const nlohmann::json extra = {{"checks", r.checks.size()}, {"failures", r.failures()}};
    files.push_back(detail::write_manifest(dir, "validate", cfg, files, extra));
    return files;
}

} // namespace oobsim

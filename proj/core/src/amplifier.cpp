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

#include "oobsim/amplifier.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "oobsim/error.hpp"
#include "oobsim/random.hpp"

namespace oobsim {

cplx PaModel::operator()(cplx x) const {
    const cplx xc = clips() ? clip_envelope(x, clip_level) : x;
    const double r2 = std::norm(xc);
    // Horner in |x|^2.
    cplx acc{};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * r2 + *it;
    return acc * xc;
}

PaModel PaModel::linear_part() const {
    PaModel out = *this;
    for (std::size_t p = 1; p < out.coeffs.size(); ++p) out.coeffs[p] = 0.0;
    return out;
}

PaModel PaModel::nonlinear_part() const {
    PaModel out = *this;
    out.coeffs[0] = 0.0;
    return out;
}

void validate(const PaModel& pa) {
    if (pa.coeffs.empty()) throw ValidationError("PA model needs at least the linear coefficient");
    if (!(pa.clip_level > 0.0)) throw ValidationError("clip level must be positive");
    for (const auto& c : pa.coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw ValidationError("PA coefficients must be finite");
}

std::string_view to_string(DeviationFamily f) {
    switch (f) {
    case DeviationFamily::none: return "none";
    case DeviationFamily::gaussian: return "gaussian";
    case DeviationFamily::uniform: return "uniform";
    }
    return "none";
}

DeviationFamily parse_deviation_family(std::string_view name) {
    if (name == "none") return DeviationFamily::none;
    if (name == "gaussian") return DeviationFamily::gaussian;
    if (name == "uniform") return DeviationFamily::uniform;
    throw ConfigError("unknown deviation family '" + std::string(name) + "'", "deviations.family");
}

RealSignal apply_passband_polynomial(const RealSignal& x, double alpha) {
    RealSignal y;
    y.sample_rate = x.sample_rate;
    y.samples.resize(x.size());
    for (std::size_t n = 0; n < x.size(); ++n) {
        const double v = x.samples[n];
        y.samples[n] = v + alpha * v * v * v;
    }
    return y;
}

ComplexSignal apply_baseband_polynomial(const ComplexSignal& x, const PaModel& pa) {
    ComplexSignal y;
    y.sample_rate = x.sample_rate;
    y.samples.resize(x.size());
    for (std::size_t n = 0; n < x.size(); ++n) y.samples[n] = pa(x.samples[n]);
    return y;
}

std::vector<double> draw_phase_deviations(int n, const PhaseDeviationSpec& spec, std::uint64_t seed) {
    if (n < 0) throw ValidationError("negative deviation count");
    if (!(spec.sigma >= 0.0)) throw ValidationError("sigma must be non-negative");
    std::vector<double> psi(static_cast<std::size_t>(n), 0.0);
    if (spec.family == DeviationFamily::none || spec.sigma == 0.0) return psi;
    Engine rng = make_engine(seed, 0);
    if (spec.family == DeviationFamily::gaussian) {
        std::normal_distribution<double> d(0.0, spec.sigma);
        for (auto& v : psi) v = d(rng);
    } else {
        std::uniform_real_distribution<double> d(-spec.sigma, spec.sigma);
        for (auto& v : psi) v = d(rng);
    }
    return psi;
}

PaBank make_pa_bank(const PaModel& base, int n_antennas, const PhaseDeviationSpec& spec,
                    std::uint64_t seed) {
    validate(base);
    if (n_antennas < 1) throw ValidationError("a PA bank needs at least one antenna");
    PaBank bank;
    bank.deviations = draw_phase_deviations(n_antennas, spec, seed);
    bank.models.reserve(static_cast<std::size_t>(n_antennas));
    for (double psi : bank.deviations) {
        PaModel m = base;
        const cplx rot = std::polar(1.0, psi);
        for (std::size_t p = 1; p < m.coeffs.size(); ++p) m.coeffs[p] *= rot;
        bank.models.push_back(std::move(m));
    }
    return bank;
}

double saturation_level(const PaModel& pa) {
    validate(pa);
    if (pa.clips()) return pa.clip_level;
    auto gain = [&](double r) {
        cplx acc{};
        for (auto it = pa.coeffs.rbegin(); it != pa.coeffs.rend(); ++it) acc = acc * (r * r) + *it;
        return std::abs(acc * r);
    };
    // Coarse scan for the first local maximum of |f(r)|, then golden-section refine.
    constexpr double r_max = 1e3;
    constexpr int steps = 200000;
    const double dr = r_max / steps;
    double prev = gain(0.0);
    for (int i = 1; i <= steps; ++i) {
        const double r = i * dr;
        const double g = gain(r);
        if (g < prev) {
            double lo = std::max(0.0, r - 2 * dr), hi = r;
            const double phi = (std::sqrt(5.0) - 1) / 2;
            for (int it = 0; it < 200; ++it) {
                const double a = hi - phi * (hi - lo), b = lo + phi * (hi - lo);
                if (gain(a) < gain(b)) lo = a;
                else hi = b;
            }
            return 0.5 * (lo + hi);
        }
        prev = g;
    }
    throw ValidationError("PA model has no compression point; specify an absolute input power");
}

PaModel pa_preset(std::string_view name) {
    if (name == "linear") return PaModel{{1.0}};
    if (name == "cubic") return PaModel{{1.0, kCubicAlpha}};
    if (name == "ninth_order_synthetic") {
        PaModel m;
        m.coeffs = {cplx{1.0, 0.0}, cplx{kCubicAlpha, 0.0}, cplx{3.0e-3, -1.2e-3}, cplx{-2.4e-4, 0.8e-4},
                    cplx{7.0e-6, -2.0e-6}};
        m.clip_level = 2.5;
        return m;
    }
    throw ConfigError("unknown PA preset '" + std::string(name) + "'", "pa.preset");
}

std::vector<std::string> pa_preset_names() { return {"linear", "cubic", "ninth_order_synthetic"}; }

namespace {

double parse_double(std::string_view tok, const std::string& where) {
    if (tok == "inf" || tok == "+inf" || tok == "Inf") return std::numeric_limits<double>::infinity();
    double v = 0.0;
    const auto* first = tok.data();
    const auto* last = tok.data() + tok.size();
    if (!tok.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) throw ConfigError("malformed number '" + std::string(tok) + "'", where);
    return v;
}

} // namespace

std::vector<PaModel> read_pa_models(std::istream& in) {
    std::vector<PaModel> models;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const std::string where = "line " + std::to_string(lineno);

        std::istringstream tokens(line);
        std::vector<std::string> toks;
        for (std::string t; tokens >> t;) toks.push_back(t);
        if (toks.size() < 2) throw ConfigError("expected coefficients followed by a clip level", where);

        PaModel m;
        m.coeffs.clear();
        for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
            const std::string_view t = toks[i];
            const auto comma = t.find(',');
            if (t.size() < 5 || t.front() != '(' || t.back() != ')' || comma == std::string_view::npos)
                throw ConfigError("coefficient '" + toks[i] + "' is not of the form (re,im)", where);
            const double re = parse_double(t.substr(1, comma - 1), where);
            const double im = parse_double(t.substr(comma + 1, t.size() - comma - 2), where);
            m.coeffs.emplace_back(re, im);
        }
        m.clip_level = parse_double(toks.back(), where);
        try {
            validate(m);
        } catch (const ValidationError& e) {
            throw ConfigError(e.what(), where);
        }
        models.push_back(std::move(m));
    }
    if (models.empty()) throw ConfigError("coefficient file contains no models", "pa.file");
    return models;
}

std::vector<PaModel> load_pa_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open '" + path + "'", "pa.file");
    return read_pa_models(f);
}

void write_pa_models(std::ostream& out, std::span<const PaModel> models) {
    const auto old_prec = out.precision(17);
    for (const auto& m : models) {
        for (const auto& c : m.coeffs) out << '(' << c.real() << ',' << c.imag() << ") ";
        if (m.clips()) out << m.clip_level;
        else out << "inf";
        out << '\n';
    }
    out.precision(old_prec);
}

} // namespace oobsim

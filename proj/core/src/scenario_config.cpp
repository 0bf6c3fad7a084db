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

#include "oobsim/scenario_config.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <type_traits>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "oobsim/error.hpp"
#include "oobsim/random.hpp"

namespace oobsim {
namespace {

using nlohmann::json;

// Reads the members of one JSON object and rejects anything it was not asked
// about.
class ObjectReader {
public:
    ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError("expected an object", path_.empty() ? "<root>" : path_);
    }

    template <typename T>
    void get(const char* key, T& out) {
        const json* v = find(key);
        if (v == nullptr) return;
        convert(*v, out, field(key));
    }

    template <typename T>
    void get(const char* key, std::optional<T>& out) {
        const json* v = find(key);
        if (v == nullptr) return;
        if (v->is_null()) {
            out.reset();
            return;
        }
        T tmp{};
        convert(*v, tmp, field(key));
        out = tmp;
    }

    const json* child(const char* key) { return find(key); }

    std::string field(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

    void finish() const {
        for (const auto& [k, v] : j_.items())
            if (!seen_.count(k)) throw ConfigError("unknown key", field(k.c_str()));
    }

private:
    const json* find(const char* key) {
        seen_.insert(key);
        const auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    static void convert(const json& v, double& out, const std::string& f) {
        if (!v.is_number()) throw ConfigError("expected a number", f);
        out = v.get<double>();
    }
    static void convert(const json& v, int& out, const std::string& f) {
        if (!v.is_number_integer()) throw ConfigError("expected an integer", f);
        out = v.get<int>();
    }
    static_assert(std::is_same_v<std::size_t, std::uint64_t>, "seed fields share the size_t reader");

    static void convert(const json& v, std::size_t& out, const std::string& f) {
        if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError("expected a non-negative integer", f);
        out = v.get<std::size_t>();
    }
    static void convert(const json& v, bool& out, const std::string& f) {
        if (!v.is_boolean()) throw ConfigError("expected true or false", f);
        out = v.get<bool>();
    }
    static void convert(const json& v, std::string& out, const std::string& f) {
        if (!v.is_string()) throw ConfigError("expected a string", f);
        out = v.get<std::string>();
    }
    static void convert(const json& v, std::vector<double>& out, const std::string& f) {
        if (!v.is_array()) throw ConfigError("expected an array of numbers", f);
        out.clear();
        for (std::size_t i = 0; i < v.size(); ++i) {
            double d = 0;
            convert(v[i], d, f + "[" + std::to_string(i) + "]");
            out.push_back(d);
        }
    }
    static void convert(const json& v, std::vector<int>& out, const std::string& f) {
        if (!v.is_array()) throw ConfigError("expected an array of integers", f);
        out.clear();
        for (std::size_t i = 0; i < v.size(); ++i) {
            int d = 0;
            convert(v[i], d, f + "[" + std::to_string(i) + "]");
            out.push_back(d);
        }
    }

    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

void read_ofdm(const json& j, const std::string& path, OfdmConfig& o) {
    ObjectReader r(j, path);
    r.get("n_fft", o.n_fft);
    r.get("n_active", o.n_active);
    r.get("subcarrier_spacing", o.subcarrier_spacing);
    r.get("oversampling_factor", o.oversampling_factor);
    r.get("cp_len", o.cp_len);
    r.get("window_len", o.window_len);
    r.get("n_symbols", o.n_symbols);
    r.finish();
}

void read_two_tone(const json& j, const std::string& path, TwoToneSettings& t) {
    ObjectReader r(j, path);
    std::string mode = t.mode == TwoToneSettings::Mode::passband ? "passband" : "dual_carrier";
    r.get("mode", mode);
    if (mode == "passband") t.mode = TwoToneSettings::Mode::passband;
    else if (mode == "dual_carrier") t.mode = TwoToneSettings::Mode::dual_carrier;
    else throw ConfigError("expected 'passband' or 'dual_carrier'", r.field("mode"));
    r.get("f1", t.f1);
    r.get("f2", t.f2);
    r.get("phi1", t.phi1);
    r.get("phi2", t.phi2);
    r.get("sample_rate", t.sample_rate);
    r.get("n_samples", t.n_samples);
    r.get("delta1", t.delta1);
    r.get("delta2", t.delta2);
    r.get("baseband_rate", t.baseband_rate);
    r.get("alphas", t.alphas);
    r.finish();
}

json ofdm_json(const OfdmConfig& o) {
    return {{"n_fft", o.n_fft},
            {"n_active", o.n_active},
            {"subcarrier_spacing", o.subcarrier_spacing},
            {"oversampling_factor", o.oversampling_factor},
            {"cp_len", o.cp_len},
            {"window_len", o.window_len},
            {"n_symbols", o.n_symbols}};
}

} // namespace

ScenarioConfig parse_config(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what(), "<root>");
    }

    ScenarioConfig cfg;
    ObjectReader r(root, "");

    if (const json* a = r.child("array")) {
        ObjectReader ar(*a, "array");
        ar.get("n_antennas", cfg.array.n_antennas);
        ar.get("spacing", cfg.array.spacing);
        ar.finish();
    }
    if (const json* u = r.child("users")) {
        if (!u->is_array()) throw ConfigError("expected an array", "users");
        cfg.users.clear();
        for (std::size_t i = 0; i < u->size(); ++i) {
            ObjectReader ur((*u)[i], "users[" + std::to_string(i) + "]");
            UserSettings us;
            ur.get("angle_deg", us.angle_deg);
            ur.get("power", us.power);
            ur.finish();
            cfg.users.push_back(us);
        }
    }
    if (const json* p = r.child("pa")) {
        ObjectReader pr(*p, "pa");
        pr.get("preset", cfg.pa.preset);
        pr.get("file", cfg.pa.file);
        pr.get("clip_level", cfg.pa.clip_level);
        pr.get("clipping", cfg.pa.clipping);
        pr.finish();
    }
    if (const json* d = r.child("deviations")) {
        ObjectReader dr(*d, "deviations");
        std::string family(to_string(cfg.deviations.spec.family));
        dr.get("family", family);
        cfg.deviations.spec.family = parse_deviation_family(family);
        dr.get("sigma", cfg.deviations.spec.sigma);
        dr.get("seed", cfg.deviations.seed);
        dr.finish();
    }
    if (const json* w = r.child("waveform")) {
        ObjectReader wr(*w, "waveform");
        std::string type = cfg.waveform.type == WaveformSettings::Type::ofdm ? "ofdm" : "gaussian";
        wr.get("type", type);
        if (type == "ofdm") cfg.waveform.type = WaveformSettings::Type::ofdm;
        else if (type == "gaussian") cfg.waveform.type = WaveformSettings::Type::gaussian;
        else throw ConfigError("expected 'ofdm' or 'gaussian'", "waveform.type");
        wr.get("n_samples", cfg.waveform.n_samples);
        wr.get("seed", cfg.waveform.seed);
        wr.get("sample_rate", cfg.waveform.sample_rate);
        if (const json* o = wr.child("ofdm")) read_ofdm(*o, "waveform.ofdm", cfg.waveform.ofdm);
        if (const json* t = wr.child("two_tone")) read_two_tone(*t, "waveform.two_tone", cfg.waveform.two_tone);
        wr.finish();
    }
    if (const json* o = r.child("operating_point")) {
        ObjectReader orr(*o, "operating_point");
        orr.get("backoff_db", cfg.operating_point.backoff_db);
        orr.get("input_power", cfg.operating_point.input_power);
        orr.finish();
    }
    if (const json* g = r.child("grid")) {
        ObjectReader gr(*g, "grid");
        gr.get("min_deg", cfg.grid.min_deg);
        gr.get("max_deg", cfg.grid.max_deg);
        gr.get("step_deg", cfg.grid.step_deg);
        gr.finish();
    }
    r.get("channel_bw", cfg.channel_bw);
    r.get("segment_len", cfg.segment_len);
    if (const json* g = r.child("gain_curve")) {
        ObjectReader gr(*g, "gain_curve");
        gr.get("sigma_min", cfg.gain_curve.sigma_min);
        gr.get("sigma_max", cfg.gain_curve.sigma_max);
        gr.get("sigma_step", cfg.gain_curve.sigma_step);
        gr.get("trials", cfg.gain_curve.trials);
        gr.get("seed", cfg.gain_curve.seed);
        gr.finish();
    }
    if (const json* v = r.child("validation")) {
        ObjectReader vr(*v, "validation");
        vr.get("moment_samples", cfg.validation.moment_samples);
        vr.get("power_samples", cfg.validation.power_samples);
        vr.get("direction_samples", cfg.validation.direction_samples);
        vr.get("mc_trials", cfg.validation.mc_trials);
        vr.get("gain_antennas", cfg.validation.gain_antennas);
        vr.get("gain_sigmas", cfg.validation.gain_sigmas);
        vr.get("seed", cfg.validation.seed);
        vr.finish();
    }
    if (const json* o = r.child("outputs")) {
        ObjectReader orr(*o, "outputs");
        orr.get("directory", cfg.outputs.directory);
        std::string norm = cfg.outputs.normalization == OutputSettings::Normalization::user_inband ? "user_inband" : "none";
        orr.get("normalization", norm);
        if (norm == "user_inband") cfg.outputs.normalization = OutputSettings::Normalization::user_inband;
        else if (norm == "none") cfg.outputs.normalization = OutputSettings::Normalization::none;
        else throw ConfigError("expected 'user_inband' or 'none'", "outputs.normalization");
        orr.get("per_term", cfg.outputs.per_term);
        orr.finish();
    }
    r.finish();
    validate(cfg);
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open '" + path + "'", "--config");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string config_to_json(const ScenarioConfig& cfg) {
    json users = json::array();
    for (const auto& u : cfg.users) users.push_back({{"angle_deg", u.angle_deg}, {"power", u.power}});
    const auto& t = cfg.waveform.two_tone;
    json j = {
        {"array", {{"n_antennas", cfg.array.n_antennas}, {"spacing", cfg.array.spacing}}},
        {"users", users},
        {"pa",
         {{"preset", cfg.pa.preset},
          {"file", cfg.pa.file},
          {"clip_level", cfg.pa.clip_level ? json(*cfg.pa.clip_level) : json(nullptr)},
          {"clipping", cfg.pa.clipping}}},
        {"deviations",
         {{"family", std::string(to_string(cfg.deviations.spec.family))},
          {"sigma", cfg.deviations.spec.sigma},
          {"seed", cfg.deviations.seed}}},
        {"waveform",
         {{"type", cfg.waveform.type == WaveformSettings::Type::ofdm ? "ofdm" : "gaussian"},
          {"n_samples", cfg.waveform.n_samples},
          {"seed", cfg.waveform.seed},
          {"sample_rate", cfg.waveform.sample_rate},
          {"ofdm", ofdm_json(cfg.waveform.ofdm)},
          {"two_tone",
           {{"mode", t.mode == TwoToneSettings::Mode::passband ? "passband" : "dual_carrier"},
            {"f1", t.f1},
            {"f2", t.f2},
            {"phi1", t.phi1},
            {"phi2", t.phi2},
            {"sample_rate", t.sample_rate},
            {"n_samples", t.n_samples},
            {"delta1", t.delta1},
            {"delta2", t.delta2},
            {"baseband_rate", t.baseband_rate},
            {"alphas", t.alphas}}}}},
        {"operating_point",
         {{"backoff_db", cfg.operating_point.backoff_db},
          {"input_power", cfg.operating_point.input_power ? json(*cfg.operating_point.input_power) : json(nullptr)}}},
        {"grid", {{"min_deg", cfg.grid.min_deg}, {"max_deg", cfg.grid.max_deg}, {"step_deg", cfg.grid.step_deg}}},
        {"channel_bw", cfg.channel_bw},
        {"segment_len", cfg.segment_len},
        {"gain_curve",
         {{"sigma_min", cfg.gain_curve.sigma_min},
          {"sigma_max", cfg.gain_curve.sigma_max},
          {"sigma_step", cfg.gain_curve.sigma_step},
          {"trials", cfg.gain_curve.trials},
          {"seed", cfg.gain_curve.seed}}},
        {"validation",
         {{"moment_samples", cfg.validation.moment_samples},
          {"power_samples", cfg.validation.power_samples},
          {"direction_samples", cfg.validation.direction_samples},
          {"mc_trials", cfg.validation.mc_trials},
          {"gain_antennas", cfg.validation.gain_antennas},
          {"gain_sigmas", cfg.validation.gain_sigmas},
          {"seed", cfg.validation.seed}}},
        {"outputs",
         {{"directory", cfg.outputs.directory},
          {"normalization",
           cfg.outputs.normalization == OutputSettings::Normalization::user_inband ? "user_inband" : "none"},
          {"per_term", cfg.outputs.per_term}}},
    };
    return j.dump(2);
}

void validate(const ScenarioConfig& cfg) {
    if (cfg.array.n_antennas < 1) throw ConfigError("must be >= 1", "array.n_antennas");
    if (!(cfg.array.spacing > 0.0)) throw ConfigError("must be positive", "array.spacing");
    if (cfg.users.empty()) throw ConfigError("at least one user is required", "users");
    for (std::size_t i = 0; i < cfg.users.size(); ++i) {
        const auto f = "users[" + std::to_string(i) + "]";
        if (!(cfg.users[i].angle_deg > -90.0 && cfg.users[i].angle_deg < 90.0))
            throw ConfigError("must lie in (-90, 90)", f + ".angle_deg");
        if (!(cfg.users[i].power > 0.0)) throw ConfigError("must be positive", f + ".power");
    }
    if (cfg.pa.file.empty()) {
        bool known = false;
        for (const auto& n : pa_preset_names()) known = known || n == cfg.pa.preset;
        if (!known) throw ConfigError("unknown preset '" + cfg.pa.preset + "'", "pa.preset");
    }
    if (cfg.pa.clip_level && !(*cfg.pa.clip_level > 0.0)) throw ConfigError("must be positive", "pa.clip_level");
    if (!(cfg.deviations.spec.sigma >= 0.0)) throw ConfigError("must be non-negative", "deviations.sigma");
    if (cfg.waveform.n_samples == 0) throw ConfigError("must be positive", "waveform.n_samples");
    if (!(cfg.waveform.sample_rate > 0.0)) throw ConfigError("must be positive", "waveform.sample_rate");
    try {
        validate(cfg.waveform.ofdm);
    } catch (const ConfigError& e) {
        const std::string what = e.what();
        throw ConfigError(what.substr(e.field().size() + 2), "waveform." + e.field());
    }
    if (!(cfg.operating_point.backoff_db >= 0.0)) throw ConfigError("must be >= 0", "operating_point.backoff_db");
    if (cfg.operating_point.input_power && !(*cfg.operating_point.input_power > 0.0))
        throw ConfigError("must be positive", "operating_point.input_power");
    if (!(cfg.grid.step_deg > 0.0)) throw ConfigError("must be positive", "grid.step_deg");
    if (!(cfg.grid.min_deg > -90.0 - 1e-12 && cfg.grid.max_deg < 90.0 + 1e-12 && cfg.grid.min_deg <= cfg.grid.max_deg))
        throw ConfigError("grid must satisfy -90 <= min <= max <= 90", "grid");
    if (!(cfg.channel_bw > 0.0)) throw ConfigError("must be positive", "channel_bw");
    if (cfg.segment_len == 0) throw ConfigError("must be positive", "segment_len");
    if (!(cfg.gain_curve.sigma_step > 0.0) || !(cfg.gain_curve.sigma_min >= 0.0) ||
        !(cfg.gain_curve.sigma_max >= cfg.gain_curve.sigma_min))
        throw ConfigError("need 0 <= sigma_min <= sigma_max and sigma_step > 0", "gain_curve");
    if (cfg.gain_curve.trials < 100) throw ConfigError("must be >= 100", "gain_curve.trials");
    if (cfg.validation.mc_trials < 100) throw ConfigError("must be >= 100", "validation.mc_trials");
}

void apply_seed(ScenarioConfig& cfg, std::uint64_t seed) {
    cfg.waveform.seed = substream_seed(seed, 1);
    cfg.deviations.seed = substream_seed(seed, 2);
    cfg.gain_curve.seed = substream_seed(seed, 3);
    cfg.validation.seed = substream_seed(seed, 4);
}

namespace {

void apply_clip_overrides(const ScenarioConfig& cfg, PaModel& m) {
    if (cfg.pa.clip_level) m.clip_level = *cfg.pa.clip_level;
    if (!cfg.pa.clipping) m.clip_level = std::numeric_limits<double>::infinity();
}

} // namespace

PaModel resolve_pa_model(const ScenarioConfig& cfg) {
    PaModel m = cfg.pa.file.empty() ? pa_preset(cfg.pa.preset) : load_pa_file(cfg.pa.file).front();
    apply_clip_overrides(cfg, m);
    return m;
}

PaBank resolve_pa_bank(const ScenarioConfig& cfg) {
    const int M = cfg.array.n_antennas;
    if (cfg.pa.file.empty()) return make_pa_bank(resolve_pa_model(cfg), M, cfg.deviations.spec, cfg.deviations.seed);

    auto models = load_pa_file(cfg.pa.file);
    if (models.size() == 1) {
        apply_clip_overrides(cfg, models.front());
        return make_pa_bank(models.front(), M, cfg.deviations.spec, cfg.deviations.seed);
    }
    if (models.size() != static_cast<std::size_t>(M))
        throw ConfigError("coefficient file must hold 1 or n_antennas models", "pa.file");
    // Measured banks keep their own coefficients; configured deviations rotate
    // each model's nonlinear part on top.
    PaBank bank;
    bank.deviations = draw_phase_deviations(M, cfg.deviations.spec, cfg.deviations.seed);
    for (std::size_t m = 0; m < models.size(); ++m) {
        PaModel pm = models[m];
        apply_clip_overrides(cfg, pm);
        const cplx rot = std::polar(1.0, bank.deviations[m]);
        for (std::size_t p = 1; p < pm.coeffs.size(); ++p) pm.coeffs[p] *= rot;
        bank.models.push_back(std::move(pm));
    }
    return bank;
}

double resolve_input_power(const ScenarioConfig& cfg) {
    if (cfg.operating_point.input_power) return *cfg.operating_point.input_power;
    const double sat = saturation_level(resolve_pa_model(cfg));
    return sat * sat / from_db(cfg.operating_point.backoff_db);
}

} // namespace oobsim

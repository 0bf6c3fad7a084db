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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oobsim/signal.hpp"

namespace oobsim {

/// Memoryless odd-order baseband PA model
///
///   f(x) = sum_p coeffs[p] * x * |x|^(2p),   p = 0 .. P-1
///
/// evaluated on the input after envelope clipping at `clip_level`.
/// coeffs[0] is the linear gain, coeffs[1] the third-order coefficient, and
/// so on.
struct PaModel {
    std::vector<cplx> coeffs{1.0};
    double clip_level = std::numeric_limits<double>::infinity();

    int order() const noexcept { return 2 * static_cast<int>(coeffs.size()) - 1; }
    bool clips() const noexcept { return clip_level < std::numeric_limits<double>::infinity(); }

    cplx operator()(cplx x) const;

    /// Same model with every nonlinear coefficient zeroed.
    PaModel linear_part() const;
    /// Same model with the linear coefficient zeroed.
    PaModel nonlinear_part() const;
};

void validate(const PaModel& pa);

enum class DeviationFamily { none, gaussian, uniform };

std::string_view to_string(DeviationFamily f);
DeviationFamily parse_deviation_family(std::string_view name);

/// Distribution of the per-PA phase deviation psi_m. `sigma` is the standard
/// deviation for the Gaussian family and the half-width for the uniform one.
struct PhaseDeviationSpec {
    DeviationFamily family = DeviationFamily::none;
    double sigma = 0.0; // rad
};

/// M per-antenna PA models together with the phase deviations that produced
/// them.
struct PaBank {
    std::vector<PaModel> models;
    std::vector<double> deviations; // rad, one per antenna

    std::size_t size() const noexcept { return models.size(); }
};

/// y = x + alpha x^3, sample-wise.
RealSignal apply_passband_polynomial(const RealSignal& x, double alpha);

ComplexSignal apply_baseband_polynomial(const ComplexSignal& x, const PaModel& pa);

/// Phase-preserving hard limit of the envelope at `level`.
inline cplx clip_envelope(cplx x, double level) {
    const double mag = std::abs(x);
    if (mag <= level) return x;
    return x * (level / mag);
}

/// Draws psi_m i.i.d. from `spec` and rotates every nonlinear coefficient of
/// PA m by exp(j psi_m). The linear coefficient is left untouched.
PaBank make_pa_bank(const PaModel& base, int n_antennas, const PhaseDeviationSpec& spec,
                    std::uint64_t seed);

std::vector<double> draw_phase_deviations(int n, const PhaseDeviationSpec& spec, std::uint64_t seed);

/// Input envelope used as the 0 dB reference for backoff: the clip level when
/// the model clips, otherwise the first AM/AM compression peak of the
/// polynomial. Throws ValidationError for models that never compress.
double saturation_level(const PaModel& pa);

// Presets --------------------------------------------------------------------

/// "linear", "cubic" (f(x) = x - 0.0368 x|x|^2, unclipped) and
/// "ninth_order_synthetic" (clipped at 2.5, see presets/ninth_order_synthetic.pa).
PaModel pa_preset(std::string_view name);
std::vector<std::string> pa_preset_names();

inline constexpr double kCubicAlpha = -0.0368;

/// Plain-text coefficient files: one model per line, coefficients as
/// "(re,im)" tokens in increasing odd order, then the clip level ("inf" for
/// none). Blank lines and lines starting with '#' are ignored.
std::vector<PaModel> read_pa_models(std::istream& in);
std::vector<PaModel> load_pa_file(const std::string& path);
void write_pa_models(std::ostream& out, std::span<const PaModel> models);

} // namespace oobsim

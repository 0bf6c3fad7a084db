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

#include "oobsim/array.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oobsim/analysis.hpp"
#include "oobsim/error.hpp"
#include "oobsim/fft.hpp"
#include "parallel.hpp"

namespace oobsim {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

void check_angle(double theta_deg) {
    if (!(theta_deg > -90.0 && theta_deg < 90.0))
        throw ValidationError("angle must lie strictly between -90 and 90 degrees");
}

void check_antenna_signals(std::span<const ComplexSignal> per_antenna, const ArrayConfig& array) {
    validate(array);
    if (per_antenna.size() != static_cast<std::size_t>(array.n_antennas))
        throw ValidationError("expected one signal per antenna");
    for (const auto& s : per_antenna.subspan(1)) require_same_format(per_antenna.front(), s);
}

// Far-field combining weights exp(+j 2 pi d m sin(theta)).
std::vector<cplx> far_field_weights(double theta_deg, const ArrayConfig& array) {
    std::vector<cplx> w(static_cast<std::size_t>(array.n_antennas));
    const double k = 2 * std::numbers::pi * array.spacing * std::sin(theta_deg * kDeg);
    for (std::size_t m = 0; m < w.size(); ++m) w[m] = std::polar(1.0, k * static_cast<double>(m));
    return w;
}

// Hermitian M x M accumulator, row-major, full storage.
struct CrossSpectrum {
    std::size_t m = 0;
    std::vector<cplx> r;

    explicit CrossSpectrum(std::size_t n) : m(n), r(n * n) {}

    // R += y y^H, upper triangle only.
    void add_outer(std::span<const cplx> y) {
        for (std::size_t i = 0; i < m; ++i) {
            const cplx yi = y[i];
            cplx* row = &r[i * m];
            for (std::size_t j = i; j < m; ++j) row[j] += yi * std::conj(y[j]);
        }
    }

    // w^T R w* using the upper triangle.
    double quadratic(std::span<const cplx> w) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const cplx* row = &r[i * m];
            acc += std::norm(w[i]) * row[i].real();
            cplx off{};
            for (std::size_t j = i + 1; j < m; ++j) off += row[j] * std::conj(w[j]);
            acc += 2.0 * (w[i] * off).real();
        }
        return acc;
    }
};

} // namespace

void validate(const ArrayConfig& array) {
    if (array.n_antennas < 1) throw ValidationError("array needs at least one antenna");
    if (!(array.spacing > 0.0)) throw ValidationError("element spacing must be positive");
}

std::vector<double> steering_phases(double theta_deg, const ArrayConfig& array) {
    validate(array);
    check_angle(theta_deg);
    std::vector<double> phi(static_cast<std::size_t>(array.n_antennas));
    const double k = -2 * std::numbers::pi * array.spacing * std::sin(theta_deg * kDeg);
    for (std::size_t m = 0; m < phi.size(); ++m) phi[m] = k * static_cast<double>(m);
    return phi;
}

double Precoded::user_power(std::size_t l, const std::vector<UserConfig>& users) const {
    return user_gains.at(l) * user_gains.at(l) * mean_power(users.at(l).signal);
}

Precoded precode(const std::vector<UserConfig>& users, const ArrayConfig& array, double target_input_power) {
    validate(array);
    if (users.empty()) throw ValidationError("precoder needs at least one user");
    if (!(target_input_power > 0.0)) throw ValidationError("target input power must be positive");
    for (const auto& u : users) {
        check_angle(u.angle_deg);
        if (!(u.power > 0.0)) throw ValidationError("user power must be positive");
        require_same_format(users.front().signal, u.signal);
        if (!(mean_power(u.signal) > 0.0)) throw ValidationError("user signal has zero power");
    }

    const std::size_t M = static_cast<std::size_t>(array.n_antennas);
    const std::size_t n = users.front().signal.size();

    std::vector<double> c(users.size());
    std::vector<std::vector<cplx>> rot(users.size());
    for (std::size_t l = 0; l < users.size(); ++l) {
        c[l] = std::sqrt(users[l].power / mean_power(users[l].signal));
        for (double p : steering_phases(users[l].angle_deg, array)) rot[l].push_back(std::polar(1.0, p));
    }

    Precoded out;
    out.antennas.resize(M);
    detail::parallel_for(M, [&](std::size_t m) {
        auto& x = out.antennas[m];
        x.sample_rate = users.front().signal.sample_rate;
        x.samples.assign(n, cplx{});
        for (std::size_t l = 0; l < users.size(); ++l) {
            const cplx w = c[l] * rot[l][m];
            const auto& s = users[l].signal.samples;
            for (std::size_t i = 0; i < n; ++i) x.samples[i] += w * s[i];
        }
    });

    double avg = 0.0;
    for (const auto& x : out.antennas) avg += mean_power(x);
    avg /= static_cast<double>(M);
    const double g = std::sqrt(target_input_power / avg);
    for (auto& x : out.antennas)
        for (auto& v : x.samples) v *= g;
    out.user_gains.resize(users.size());
    for (std::size_t l = 0; l < users.size(); ++l) out.user_gains[l] = g * c[l];
    return out;
}

ComplexSignal far_field_signal(std::span<const ComplexSignal> per_antenna, double theta_deg,
                               const ArrayConfig& array) {
    check_antenna_signals(per_antenna, array);
    const auto w = far_field_weights(theta_deg, array);
    ComplexSignal r;
    r.sample_rate = per_antenna.front().sample_rate;
    r.samples.assign(per_antenna.front().size(), cplx{});
    for (std::size_t m = 0; m < per_antenna.size(); ++m) {
        const auto& y = per_antenna[m].samples;
        for (std::size_t i = 0; i < y.size(); ++i) r.samples[i] += w[m] * y[i];
    }
    return r;
}

std::vector<double> angle_grid(double min_deg, double max_deg, double step_deg) {
    if (!(step_deg > 0.0)) throw ValidationError("grid step must be positive");
    if (!(max_deg >= min_deg)) throw ValidationError("grid max must not be below min");
    const auto n = static_cast<std::size_t>(std::floor((max_deg - min_deg) / step_deg + 1e-9)) + 1;
    std::vector<double> g(n);
    // Integer-based stepping keeps grid points exact multiples of the step.
    for (std::size_t i = 0; i < n; ++i) g[i] = min_deg + static_cast<double>(i) * step_deg;
    return g;
}

BeamPattern beampattern(std::span<const ComplexSignal> per_antenna, std::span<const double> grid,
                        double channel_bw, const ArrayConfig& array, std::size_t segment_len) {
    check_antenna_signals(per_antenna, array);
    if (grid.empty()) throw ValidationError("beampattern needs a non-empty angle grid");
    const std::size_t M = per_antenna.size();
    const std::size_t n = per_antenna.front().size();
    const double fs = per_antenna.front().sample_rate;
    if (n == 0) throw ValidationError("empty antenna signals");
    if (segment_len == 0 || segment_len > n) throw ValidationError("segment_len must be in [1, signal length]");
    if (!(channel_bw > 0.0) || !(channel_bw < fs)) throw ValidationError("channel_bw must be in (0, sample_rate)");

    const std::size_t L = segment_len;
    // Band of every FFT-order bin, using the same centred frequency grid as
    // power_spectrum().
    std::vector<Band> band(L);
    const double df = fs / static_cast<double>(L);
    const auto half = static_cast<long>(L / 2);
    for (std::size_t k = 0; k < L; ++k) {
        const auto c = static_cast<long>(centered_bin(k, L));
        band[k] = classify_frequency(static_cast<double>(c - half) * df, channel_bw);
    }

    CrossSpectrum r_in(M), r_lo(M), r_up(M), r_out(M);
    std::vector<FftPlan> plans;
    plans.reserve(M);
    for (std::size_t m = 0; m < M; ++m) plans.emplace_back(L, FftPlan::Direction::forward);
    std::vector<cplx> spectra(M * L); // [m][k] for the current segment
    std::vector<cplx> column(M);

    for (std::size_t start = 0; start < n; start += L) {
        const std::size_t len = std::min(L, n - start);
        detail::parallel_for(M, [&](std::size_t m) {
            std::span<const cplx> x(per_antenna[m].samples);
            const auto X = plans[m].transform(x.subspan(start, len));
            std::copy(X.begin(), X.end(), spectra.begin() + static_cast<std::ptrdiff_t>(m * L));
        });
        for (std::size_t k = 0; k < L; ++k) {
            for (std::size_t m = 0; m < M; ++m) column[m] = spectra[m * L + k];
            switch (band[k]) {
            case Band::inband: r_in.add_outer(column); break;
            case Band::oob_lower: r_lo.add_outer(column); break;
            case Band::oob_upper: r_up.add_outer(column); break;
            case Band::outside: r_out.add_outer(column); break;
            }
        }
    }

    const double norm = 1.0 / (static_cast<double>(n) * static_cast<double>(L));
    BeamPattern bp;
    bp.angles.assign(grid.begin(), grid.end());
    bp.truncated = adjacent_channels_truncated(channel_bw, fs);
    const std::size_t G = grid.size();
    bp.p_total.resize(G);
    bp.p_inband.resize(G);
    bp.p_oob.resize(G);
    bp.p_oob_lower.resize(G);
    bp.p_oob_upper.resize(G);
    detail::parallel_for(G, [&](std::size_t i) {
        const auto w = far_field_weights(grid[i], array);
        const double in = std::max(0.0, r_in.quadratic(w) * norm);
        const double lo = std::max(0.0, r_lo.quadratic(w) * norm);
        const double up = std::max(0.0, r_up.quadratic(w) * norm);
        const double out = std::max(0.0, r_out.quadratic(w) * norm);
        bp.p_inband[i] = in;
        bp.p_oob_lower[i] = lo;
        bp.p_oob_upper[i] = up;
        bp.p_oob[i] = lo + up;
        bp.p_total[i] = in + lo + up + out;
    });
    return bp;
}

std::pair<std::optional<double>, std::optional<double>> spurious_directions(double theta1_deg,
                                                                            double theta2_deg) {
    check_angle(theta1_deg);
    check_angle(theta2_deg);
    const double s1 = std::sin(theta1_deg * kDeg);
    const double s2 = std::sin(theta2_deg * kDeg);
    auto dir = [](double x) -> std::optional<double> {
        if (std::abs(x) > 1.0) return std::nullopt;
        return std::asin(x) / kDeg;
    };
    return {dir(2 * s2 - s1), dir(2 * s1 - s2)};
}

std::vector<IntermodDirection> intermod_directions(double theta1_deg, double theta2_deg, int max_order,
                                                   const ArrayConfig& array) {
    validate(array);
    check_angle(theta1_deg);
    check_angle(theta2_deg);
    const double s1 = std::sin(theta1_deg * kDeg);
    const double s2 = std::sin(theta2_deg * kDeg);
    const double period = 1.0 / array.spacing; // steering repeats every 1/d in sine space

    std::vector<IntermodDirection> out;
    const int half = (max_order + 1) / 2;
    for (int a = -half + 1; a <= half; ++a) {
        const int b = 1 - a;
        const int order = std::abs(a) + std::abs(b);
        if (order < 3 || order > max_order) continue;
        const double u = a * s1 + b * s2;
        const auto kmin = static_cast<int>(std::ceil((-1.0 - u) / period));
        const auto kmax = static_cast<int>(std::floor((1.0 - u) / period));
        for (int k = kmin; k <= kmax; ++k) {
            const double sv = u + k * period;
            if (std::abs(sv) >= 1.0) continue;
            out.push_back({a, b, order, std::asin(sv) / kDeg, k != 0});
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        return x.order != y.order ? x.order < y.order : x.angle_deg < y.angle_deg;
    });
    return out;
}

std::size_t nearest_index(std::span<const double> grid, double angle_deg) {
    if (grid.empty()) throw ValidationError("empty grid");
    std::size_t best = 0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (std::abs(grid[i] - angle_deg) < std::abs(grid[best] - angle_deg)) best = i;
    return best;
}

} // namespace oobsim

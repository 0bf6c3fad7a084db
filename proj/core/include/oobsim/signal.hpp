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

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace oobsim {

using cplx = std::complex<double>;

/// Uniformly sampled real passband waveform.
struct RealSignal {
    std::vector<double> samples;
    double sample_rate = 0.0; // Hz

    std::size_t size() const noexcept { return samples.size(); }
};

/// Uniformly sampled complex-baseband waveform, s(t) = A(t) exp(j theta(t)).
struct ComplexSignal {
    std::vector<cplx> samples;
    double sample_rate = 0.0; // Hz

    std::size_t size() const noexcept { return samples.size(); }
};

/// Throws ValidationError unless sample_rate > 0 and every sample is finite.
void validate(const RealSignal& s);
void validate(const ComplexSignal& s);

/// Throws ValidationError unless both signals share sample rate and length.
void require_same_format(const ComplexSignal& a, const ComplexSignal& b);

double mean_square(std::span<const double> x);
double mean_square(std::span<const cplx> x);
inline double mean_power(const ComplexSignal& s) { return mean_square(s.samples); }
inline double mean_power(const RealSignal& s) { return mean_square(s.samples); }

inline double to_db(double linear) { return 10.0 * std::log10(linear); }
inline double from_db(double db) { return std::pow(10.0, db / 10.0); }

} // namespace oobsim

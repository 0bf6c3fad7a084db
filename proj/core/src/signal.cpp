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

#include "oobsim/signal.hpp"

#include <cmath>

#include "oobsim/error.hpp"

namespace oobsim {

void validate(const RealSignal& s) {
    if (!(s.sample_rate > 0.0)) throw ValidationError("sample_rate must be positive");
    for (double v : s.samples)
        if (!std::isfinite(v)) throw ValidationError("signal contains non-finite samples");
}

void validate(const ComplexSignal& s) {
    if (!(s.sample_rate > 0.0)) throw ValidationError("sample_rate must be positive");
    for (const cplx& v : s.samples)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw ValidationError("signal contains non-finite samples");
}

void require_same_format(const ComplexSignal& a, const ComplexSignal& b) {
    if (a.sample_rate != b.sample_rate) throw ValidationError("signals differ in sample rate");
    if (a.size() != b.size()) throw ValidationError("signals differ in length");
}

double mean_square(std::span<const double> x) {
    if (x.empty()) return 0.0;
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return acc / static_cast<double>(x.size());
}

double mean_square(std::span<const cplx> x) {
    if (x.empty()) return 0.0;
    double acc = 0.0;
    for (const cplx& v : x) acc += std::norm(v);
    return acc / static_cast<double>(x.size());
}

} // namespace oobsim

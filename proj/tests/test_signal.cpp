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

#include <cmath>
#include <set>

#include "doctest.h"
#include "oobsim/error.hpp"
#include "oobsim/fft.hpp"
#include "oobsim/random.hpp"
#include "oobsim/signal.hpp"

using namespace oobsim;

TEST_CASE("validate rejects bad sample rates and non-finite samples") {
    ComplexSignal s{{cplx(1.0), cplx(2.0)}, 0.0};
    CHECK_THROWS_AS(validate(s), ValidationError);
    s.sample_rate = 1.0;
    CHECK_NOTHROW(validate(s));
    s.samples[1] = cplx(NAN, 0.0);
    CHECK_THROWS_AS(validate(s), ValidationError);
    RealSignal r{{1.0, INFINITY}, 1.0};
    CHECK_THROWS_AS(validate(r), ValidationError);
}

TEST_CASE("require_same_format") {
    ComplexSignal a{std::vector<cplx>(4), 1.0};
    ComplexSignal b{std::vector<cplx>(5), 1.0};
    CHECK_THROWS_AS(require_same_format(a, b), ValidationError);
    b.samples.resize(4);
    b.sample_rate = 2.0;
    CHECK_THROWS_AS(require_same_format(a, b), ValidationError);
}

TEST_CASE("mean power and dB helpers") {
    ComplexSignal s{{cplx(3, 4), cplx(0, 0)}, 1.0};
    CHECK(mean_power(s) == doctest::Approx(12.5));
    CHECK(to_db(100.0) == doctest::Approx(20.0));
    CHECK(from_db(-3.0) == doctest::Approx(0.501187).epsilon(1e-5));
    CHECK(from_db(to_db(0.37)) == doctest::Approx(0.37));
}

TEST_CASE("substreams are deterministic and distinct") {
    CHECK(substream_seed(7, 3) == substream_seed(7, 3));
    std::set<std::uint64_t> seen;
    for (std::uint64_t s = 0; s < 4; ++s)
        for (std::uint64_t i = 0; i < 64; ++i) seen.insert(substream_seed(s, i));
    CHECK(seen.size() == 256);
    auto e1 = make_engine(1, 2), e2 = make_engine(1, 2);
    CHECK(e1() == e2());
}

TEST_CASE("FFT forward then inverse returns n times the input") {
    const std::size_t n = 30; // not a power of two
    FftPlan fwd(n, FftPlan::Direction::forward), inv(n, FftPlan::Direction::inverse);
    std::vector<cplx> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = cplx(std::sin(0.3 * i), std::cos(1.7 * i));
    const auto X = fwd.transform(x);
    const std::vector<cplx> Xc(X.begin(), X.end());
    const auto y = inv.transform(Xc);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y[i] / double(n) - x[i]) < 1e-12);
}

TEST_CASE("FFT of a unit impulse is flat and short inputs are zero padded") {
    FftPlan fwd(8, FftPlan::Direction::forward);
    const std::vector<cplx> one{cplx(1.0)};
    const auto X = fwd.transform(one);
    for (const auto& v : X) CHECK(std::abs(v - cplx(1.0)) < 1e-15);
}

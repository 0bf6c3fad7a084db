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

#include "oobsim/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <new>
#include <utility>

#include "oobsim/error.hpp"

namespace oobsim {
namespace {

// FFTW planner calls are not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

} // namespace

FftPlan::FftPlan(std::size_t n, Direction dir) : n_(n) {
    if (n == 0) throw ValidationError("FFT length must be positive");
    std::lock_guard lock(planner_mutex());
    auto* in = fftw_alloc_complex(n);
    auto* out = fftw_alloc_complex(n);
    if (in == nullptr || out == nullptr) {
        fftw_free(in);
        fftw_free(out);
        throw std::bad_alloc();
    }
    in_ = in;
    out_ = out;
    plan_ = fftw_plan_dft_1d(static_cast<int>(n), in, out,
                             dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD,
                             FFTW_ESTIMATE);
    std::fill_n(reinterpret_cast<cplx*>(in_), n_, cplx{});
}

FftPlan::~FftPlan() { release(); }

FftPlan::FftPlan(FftPlan&& other) noexcept
    : n_(std::exchange(other.n_, 0)),
      in_(std::exchange(other.in_, nullptr)),
      out_(std::exchange(other.out_, nullptr)),
      plan_(std::exchange(other.plan_, nullptr)) {}

FftPlan& FftPlan::operator=(FftPlan&& other) noexcept {
    if (this != &other) {
        release();
        n_ = std::exchange(other.n_, 0);
        in_ = std::exchange(other.in_, nullptr);
        out_ = std::exchange(other.out_, nullptr);
        plan_ = std::exchange(other.plan_, nullptr);
    }
    return *this;
}

void FftPlan::release() noexcept {
    if (plan_ == nullptr && in_ == nullptr) return;
    std::lock_guard lock(planner_mutex());
    if (plan_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(plan_));
    fftw_free(in_);
    fftw_free(out_);
    plan_ = in_ = out_ = nullptr;
}

std::span<cplx> FftPlan::input() noexcept { return {reinterpret_cast<cplx*>(in_), n_}; }

std::span<const cplx> FftPlan::output() const noexcept {
    return {reinterpret_cast<const cplx*>(out_), n_};
}

void FftPlan::execute() { fftw_execute(static_cast<fftw_plan>(plan_)); }

std::span<const cplx> FftPlan::transform(std::span<const cplx> in) {
    if (in.size() > n_) throw ValidationError("FFT input longer than plan length");
    auto buf = input();
    std::copy(in.begin(), in.end(), buf.begin());
    std::fill(buf.begin() + static_cast<std::ptrdiff_t>(in.size()), buf.end(), cplx{});
    execute();
    return output();
}

} // namespace oobsim

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

#include <cstddef>
#include <span>

#include "oobsim/signal.hpp"

namespace oobsim {

/// Owning wrapper around an FFTW complex-to-complex plan of fixed length.
/// Transforms are unnormalized in both directions. Instances are not
/// shareable between threads; create one per worker.
class FftPlan {
public:
    enum class Direction { forward, inverse };

    FftPlan(std::size_t n, Direction dir);
    ~FftPlan();
    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;
    FftPlan(FftPlan&& other) noexcept;
    FftPlan& operator=(FftPlan&& other) noexcept;

    std::size_t size() const noexcept { return n_; }

    /// Input buffer; fill before calling execute().
    std::span<cplx> input() noexcept;
    /// Output of the last execute().
    std::span<const cplx> output() const noexcept;

    void execute();

    /// Copies `in` (zero-padding when shorter) and executes.
    std::span<const cplx> transform(std::span<const cplx> in);

private:
    void release() noexcept;

    std::size_t n_ = 0;
    void* in_ = nullptr;
    void* out_ = nullptr;
    void* plan_ = nullptr;
};

} // namespace oobsim

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
#include <random>

namespace oobsim {

using Engine = std::mt19937_64;

/// Seed for substream `index` of a base seed. Substreams let independent
/// draws (users, antennas, Monte Carlo trials) stay reproducible regardless
/// of the order in which they are evaluated.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

inline Engine make_engine(std::uint64_t seed, std::uint64_t stream) {
    return Engine(substream_seed(seed, stream));
}

} // namespace oobsim

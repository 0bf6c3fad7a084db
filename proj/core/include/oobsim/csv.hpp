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

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace oobsim {

/// Shortest round-trip decimal form ("inf", "-inf" and "nan" spelled out).
std::string format_double(double v);

/// Minimal comma-separated writer. Values are numeric; the header is written
/// on construction.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string> header);

    void row(std::initializer_list<double> values);
    void row(std::span<const double> values);

private:
    std::ofstream out_;
    std::size_t columns_ = 0;
    std::filesystem::path path_;
};

} // namespace oobsim

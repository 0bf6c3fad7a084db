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
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "oobsim/scenario_config.hpp"
#include "oobsim/version.hpp"

namespace oobsim::detail {

/// manifest.json next to the outputs: command, library version, resolved
/// configuration, output file names and command-specific summary values.
/// Contains nothing time- or host-dependent, so reruns are byte-identical.
inline std::filesystem::path write_manifest(const std::filesystem::path& dir, const std::string& command,
                                            const ScenarioConfig& cfg,
                                            const std::vector<std::filesystem::path>& outputs,
                                            const nlohmann::json& summary) {
    nlohmann::json files = nlohmann::json::array();
    for (const auto& p : outputs) files.push_back(p.filename().string());
    const nlohmann::json m = {{"command", command},
                              {"version", std::string(kVersion)},
                              {"config", nlohmann::json::parse(config_to_json(cfg))},
                              {"outputs", files},
                              {"summary", summary}};
    const auto path = dir / "manifest.json";
    std::ofstream out(path, std::ios::binary);
    out << m.dump(2) << '\n';
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return path;
}

} // namespace oobsim::detail

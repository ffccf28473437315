// Copyright 2026 The cvcluster Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "cvcluster/cli/config.hpp"

namespace cvc::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitNumerical = 3,
  kExitIo = 4,
};

/// Renders the output document of a validated configuration.
std::string render(const ExperimentConfig& config);

std::string render_ppt_scan(const ExperimentConfig& config);
std::string render_supermodes(const ExperimentConfig& config);
std::string render_dual_rail(const ExperimentConfig& config);
std::string render_lattice(const ExperimentConfig& config);
std::string render_time_varying(const ExperimentConfig& config);
std::string render_overlap(const ExperimentConfig& config);

/// Meta block shared by the lattice and time-varying commands. A constant
/// schedule produces exactly the static lattice meta.
nlohmann::json lattice_meta(const PumpSpec& pump, FreqWindow window, BinRange bins, const ClusterGraph& graph);

/// Full command-line entry point: parses argv, runs the verb, writes the
/// result to --out (atomically) or `out`. Diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cvc::cli

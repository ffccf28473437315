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

// Experiment configuration: a JSON file with nested sections plus command-line
// overrides (flags win). Angles are numbers in radians or strings in units of
// π such as "0.125pi", "-pi" or "pi".
//
//   {
//     "gamma": 0.1,
//     "pump": {"p1": 1, "p2": 3, "theta1": "0.125pi", "theta2": "0.125pi", "amplitude": 1},
//     "theta": "0.125pi",
//     "theta_grid": {"start": "0pi", "stop": "0.25pi", "points": 101},
//     "window": "-2:4",
//     "bins": "0:5",
//     "schedule": [["0pi", "0.25pi"], ["0.25pi", "0pi"]],
//     "overlap": {"resolution": 64},
//     "threads": 1,
//     "output": {"path": "graph.json", "format": "json"}
//   }
//
// "theta_grid" may also be a list of angles. A list "schedule" repeats with
// period equal to its length (bin k uses entry k mod length); an object maps
// explicit bins, e.g. {"0": ["0pi", "0.25pi"], "1": [...]}.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cvcluster/staggering.hpp"

namespace cvc::cli {

/// Invalid configuration; `key()` names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error("config key '" + key + "': " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

enum class Command { ppt_scan, supermodes, dual_rail, lattice, time_varying, overlap };

std::string command_name(Command c);

/// Everything a command may read. Optional fields are checked per command by
/// validate().
struct ExperimentConfig {
  Command command = Command::ppt_scan;
  std::optional<double> gamma;
  std::optional<int> p1;
  std::optional<int> p2;
  std::optional<double> theta1;
  std::optional<double> theta2;
  double amplitude = 1.0;
  std::optional<double> theta;
  std::vector<double> theta_grid;
  FreqWindow window{-2, 4};
  BinRange bins{0, 5};
  std::vector<std::pair<double, double>> schedule_pattern;
  std::map<int, std::pair<double, double>> schedule_bins;
  int resolution = kDefaultOverlapResolution;
  unsigned threads = 1;
  std::string out;  // empty: stdout
  std::string format;

  bool has_schedule() const { return !schedule_pattern.empty() || !schedule_bins.empty(); }
  /// Two-component pump from p1/p2/theta1/theta2 (and the schedule if any).
  PumpSpec pump() const;
};

/// Flag values given on the command line; set fields override the file.
struct Overrides {
  std::optional<double> gamma;
  std::optional<std::string> theta1;
  std::optional<std::string> theta2;
  std::optional<std::string> theta;
  std::optional<int> p1;
  std::optional<int> p2;
  std::optional<std::string> window;
  std::optional<std::string> bins;
  std::optional<int> points;
  std::optional<int> resolution;
  std::optional<unsigned> threads;
  std::optional<std::string> out;
  std::optional<std::string> format;
};

double parse_angle(const nlohmann::json& value, const std::string& key);
double parse_angle(const std::string& text, const std::string& key);
/// "a:b" -> (a, b).
std::pair<int, int> parse_range(const std::string& text, const std::string& key);

/// Merges file contents (may be null) and overrides, rejects unknown keys and
/// checks every precondition of `command`. Throws ConfigError.
ExperimentConfig make_config(Command command, const nlohmann::json& file, const Overrides& overrides);

}  // namespace cvc::cli

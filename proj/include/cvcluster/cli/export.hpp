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

// File formats written by the command-line tool.
//
// Graph JSON:
//   {"nodes": [{"spatial": "h", "freq": 0, "time": 0}, ...],
//    "edges": [{"u": 0, "v": 3, "weight": 0.408248290464}, ...],
//    "macronodes": [{"members": [0, 1]}, ...],   // lattice commands only
//    "meta": {...}}
// Edge endpoints are indices into "nodes". Every float is rounded to 12
// significant digits. CSV files use ',' separators, '\n' line endings and a
// header row.

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cvcluster/entanglement.hpp"
#include "cvcluster/staggering.hpp"

namespace cvc::cli {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kSignificantDigits = 12;

/// Value rounded to 12 significant digits (what every output file carries).
double round_sig(double value);
/// "%.12g" rendering of a value.
std::string format_number(double value);

nlohmann::json graph_to_json(const ClusterGraph& graph, const nlohmann::json& meta, bool with_macronodes);
ClusterGraph graph_from_json(const nlohmann::json& doc);

/// Undirected DOT graph; edge labels carry weights rounded to 4 decimals and
/// macronodes are drawn as clusters.
std::string graph_to_dot(const ClusterGraph& graph, const std::string& title, bool with_macronodes);

/// Header "theta,bipartition,ppt_value", rows in (grid, bipartition) order.
std::string ppt_table_csv(const PptTable& table);

/// Writes via a temporary sibling file and rename. Throws IoError.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace cvc::cli

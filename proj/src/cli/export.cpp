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

#include "cvcluster/cli/export.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace cvc::cli {

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", kSignificantDigits, value);
  return buf;
}

double round_sig(double value) { return std::stod(format_number(value)); }

namespace {

std::string fixed4(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", value);
  return buf;
}

nlohmann::json node_json(const ModeId& m) {
  return {{"spatial", std::string(1, spatial_char(m.spatial))}, {"freq", m.freq}, {"time", m.time}};
}

}  // namespace

nlohmann::json graph_to_json(const ClusterGraph& graph, const nlohmann::json& meta, bool with_macronodes) {
  nlohmann::json doc;
  doc["nodes"] = nlohmann::json::array();
  for (const ModeId& m : graph.nodes) doc["nodes"].push_back(node_json(m));
  doc["edges"] = nlohmann::json::array();
  for (const ClusterEdge& e : graph.edges) {
    doc["edges"].push_back({{"u", *graph.index_of(e.u)}, {"v", *graph.index_of(e.v)}, {"weight", round_sig(e.weight)}});
  }
  if (with_macronodes) {
    doc["macronodes"] = nlohmann::json::array();
    for (const auto& pair : graph.macronodes) {
      doc["macronodes"].push_back({{"members", {*graph.index_of(pair[0]), *graph.index_of(pair[1])}}});
    }
  }
  doc["meta"] = meta;
  return doc;
}

ClusterGraph graph_from_json(const nlohmann::json& doc) {
  ClusterGraph graph;
  for (const auto& node : doc.at("nodes")) {
    const std::string s = node.at("spatial").get<std::string>();
    if (s != "h" && s != "v") throw InvalidArgument("node spatial must be \"h\" or \"v\", got \"" + s + "\"");
    graph.nodes.push_back({s == "h" ? Spatial::h : Spatial::v, node.at("freq").get<int>(), node.at("time").get<int>()});
  }
  auto node_at = [&](const nlohmann::json& index) {
    const auto i = index.get<std::size_t>();
    if (i >= graph.nodes.size()) throw InvalidArgument("edge endpoint index out of range");
    return graph.nodes[i];
  };
  for (const auto& edge : doc.at("edges")) {
    const ModeId a = node_at(edge.at("u"));
    const ModeId b = node_at(edge.at("v"));
    graph.edges.push_back({std::min(a, b), std::max(a, b), edge.at("weight").get<double>()});
  }
  if (doc.contains("macronodes")) {
    for (const auto& group : doc.at("macronodes")) {
      const auto& members = group.at("members");
      graph.macronodes.push_back({node_at(members.at(0)), node_at(members.at(1))});
    }
  }
  return graph;
}

std::string graph_to_dot(const ClusterGraph& graph, const std::string& title, bool with_macronodes) {
  std::ostringstream out;
  out << "graph cluster_state {\n";
  out << "  label=\"" << title << "\";\n";
  out << "  node [shape=circle];\n";
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    out << "  n" << i << " [label=\"" << to_string(graph.nodes[i]) << "\"];\n";
  }
  for (const ClusterEdge& e : graph.edges) {
    out << "  n" << *graph.index_of(e.u) << " -- n" << *graph.index_of(e.v) << " [label=\"" << fixed4(e.weight)
        << "\"];\n";
  }
  if (with_macronodes) {
    for (std::size_t i = 0; i < graph.macronodes.size(); ++i) {
      out << "  subgraph cluster_m" << i << " { n" << *graph.index_of(graph.macronodes[i][0]) << "; n"
          << *graph.index_of(graph.macronodes[i][1]) << "; }\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string ppt_table_csv(const PptTable& table) {
  std::string out = "theta,bipartition,ppt_value\n";
  for (std::size_t i = 0; i < table.thetas.size(); ++i) {
    for (std::size_t j = 0; j < table.bipartitions.size(); ++j) {
      out += format_number(table.thetas[i]) + "," + table.bipartitions[j].label + "," +
             format_number(table.values(static_cast<Index>(i), static_cast<Index>(j))) + "\n";
    }
  }
  return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open " + tmp.string() + " for writing");
    file << content;
    file.flush();
    if (!file) throw IoError("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at " + path.string());
  }
}

}  // namespace cvc::cli

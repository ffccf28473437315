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

#include "cvcluster/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <set>

#include "cvcluster/entanglement.hpp"

namespace cvc::cli {

using nlohmann::json;

std::string command_name(Command c) {
  switch (c) {
    case Command::ppt_scan: return "ppt-scan";
    case Command::supermodes: return "supermodes";
    case Command::dual_rail: return "dual-rail";
    case Command::lattice: return "lattice";
    case Command::time_varying: return "time-varying";
    case Command::overlap: return "overlap";
  }
  return "?";
}

PumpSpec ExperimentConfig::pump() const {
  PumpSpec spec;
  spec.components.push_back({p1.value_or(0), theta1.value_or(0.0), amplitude, {}});
  spec.components.push_back({p2.value_or(0), theta2.value_or(0.0), amplitude, {}});
  if (!schedule_bins.empty()) {
    spec = with_schedule(spec, PumpSchedule{schedule_bins});
  } else if (!schedule_pattern.empty()) {
    spec = with_schedule(spec, PumpSchedule::periodic(schedule_pattern, bins));
  }
  return spec;
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

bool parse_double(const std::string& text, double& out) {
  if (text.empty()) return false;
  try {
    std::size_t used = 0;
    out = std::stod(text, &used);
    return used == text.size() && std::isfinite(out);
  } catch (const std::exception&) {
    return false;
  }
}

bool parse_int(const std::string& text, int& out) {
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end && !text.empty();
}

void reject_unknown(const json& object, const std::set<std::string>& allowed, const std::string& prefix) {
  for (const auto& [key, value] : object.items()) {
    if (!allowed.count(key)) throw ConfigError(prefix + key, "unknown key");
  }
}

double number_at(const json& value, const std::string& key) {
  if (!value.is_number()) throw ConfigError(key, "expected a number");
  return value.get<double>();
}

int int_at(const json& value, const std::string& key) {
  if (!value.is_number_integer()) throw ConfigError(key, "expected an integer");
  return value.get<int>();
}

std::string string_at(const json& value, const std::string& key) {
  if (!value.is_string()) throw ConfigError(key, "expected a string");
  return value.get<std::string>();
}

std::pair<int, int> range_at(const json& value, const std::string& key) {
  if (value.is_string()) return parse_range(value.get<std::string>(), key);
  if (value.is_array() && value.size() == 2) return {int_at(value[0], key), int_at(value[1], key)};
  throw ConfigError(key, "expected \"a:b\" or [a, b]");
}

std::pair<double, double> angle_pair(const json& value, const std::string& key) {
  if (!value.is_array() || value.size() != 2) throw ConfigError(key, "expected [theta1, theta2]");
  return {parse_angle(value[0], key), parse_angle(value[1], key)};
}

}  // namespace

double parse_angle(const std::string& raw, const std::string& key) {
  const std::string text = trim(raw);
  double value = 0.0;
  if (text.size() >= 2 && text.compare(text.size() - 2, 2, "pi") == 0) {
    const std::string factor = trim(text.substr(0, text.size() - 2));
    if (factor.empty() || factor == "+") return std::numbers::pi;
    if (factor == "-") return -std::numbers::pi;
    if (parse_double(factor, value)) return value * std::numbers::pi;
  } else if (parse_double(text, value)) {
    return value;
  }
  throw ConfigError(key, "cannot parse angle \"" + raw + "\" (use radians or e.g. \"0.125pi\")");
}

double parse_angle(const json& value, const std::string& key) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) return parse_angle(value.get<std::string>(), key);
  throw ConfigError(key, "expected an angle");
}

std::pair<int, int> parse_range(const std::string& text, const std::string& key) {
  const auto colon = text.find(':');
  int a = 0;
  int b = 0;
  if (colon == std::string::npos || !parse_int(trim(text.substr(0, colon)), a) ||
      !parse_int(trim(text.substr(colon + 1)), b)) {
    throw ConfigError(key, "expected a range \"a:b\", got \"" + text + "\"");
  }
  return {a, b};
}

ExperimentConfig make_config(Command command, const json& file, const Overrides& ov) {
  ExperimentConfig cfg;
  cfg.command = command;
  std::optional<int> points;

  if (!file.is_null()) {
    if (!file.is_object()) throw ConfigError("<root>", "config file must contain a JSON object");
    reject_unknown(file, {"gamma", "pump", "theta", "theta_grid", "window", "bins", "schedule", "overlap", "threads",
                          "output"},
                   "");
    if (file.contains("gamma")) cfg.gamma = number_at(file["gamma"], "gamma");
    if (file.contains("pump")) {
      const json& pump = file["pump"];
      if (!pump.is_object()) throw ConfigError("pump", "expected an object");
      reject_unknown(pump, {"p1", "p2", "theta1", "theta2", "amplitude"}, "pump.");
      if (pump.contains("p1")) cfg.p1 = int_at(pump["p1"], "pump.p1");
      if (pump.contains("p2")) cfg.p2 = int_at(pump["p2"], "pump.p2");
      if (pump.contains("theta1")) cfg.theta1 = parse_angle(pump["theta1"], "pump.theta1");
      if (pump.contains("theta2")) cfg.theta2 = parse_angle(pump["theta2"], "pump.theta2");
      if (pump.contains("amplitude")) cfg.amplitude = number_at(pump["amplitude"], "pump.amplitude");
    }
    if (file.contains("theta")) cfg.theta = parse_angle(file["theta"], "theta");
    if (file.contains("theta_grid")) {
      const json& grid = file["theta_grid"];
      if (grid.is_array()) {
        for (const json& t : grid) cfg.theta_grid.push_back(parse_angle(t, "theta_grid"));
        if (cfg.theta_grid.empty()) throw ConfigError("theta_grid", "grid is empty");
      } else if (grid.is_object()) {
        reject_unknown(grid, {"start", "stop", "points"}, "theta_grid.");
        const double start = grid.contains("start") ? parse_angle(grid["start"], "theta_grid.start") : 0.0;
        const double stop =
            grid.contains("stop") ? parse_angle(grid["stop"], "theta_grid.stop") : std::numbers::pi / 4.0;
        const int n = grid.contains("points") ? int_at(grid["points"], "theta_grid.points") : 101;
        if (n < 1) throw ConfigError("theta_grid.points", "must be >= 1");
        for (int i = 0; i < n; ++i) cfg.theta_grid.push_back(n == 1 ? start : start + (stop - start) * i / (n - 1));
      } else {
        throw ConfigError("theta_grid", "expected a list of angles or {start, stop, points}");
      }
    }
    if (file.contains("window")) {
      auto [a, b] = range_at(file["window"], "window");
      cfg.window = {a, b};
    }
    if (file.contains("bins")) {
      auto [a, b] = range_at(file["bins"], "bins");
      cfg.bins = {a, b};
    }
    if (file.contains("schedule")) {
      const json& schedule = file["schedule"];
      if (schedule.is_array()) {
        if (schedule.empty()) throw ConfigError("schedule", "pattern is empty");
        for (const json& entry : schedule) cfg.schedule_pattern.push_back(angle_pair(entry, "schedule"));
      } else if (schedule.is_object()) {
        for (const auto& [bin, entry] : schedule.items()) {
          int k = 0;
          if (!parse_int(bin, k)) throw ConfigError("schedule." + bin, "bin labels must be integers");
          cfg.schedule_bins[k] = angle_pair(entry, "schedule." + bin);
        }
      } else {
        throw ConfigError("schedule", "expected a list pattern or a bin -> [theta1, theta2] object");
      }
    }
    if (file.contains("overlap")) {
      const json& overlap = file["overlap"];
      if (!overlap.is_object()) throw ConfigError("overlap", "expected an object");
      reject_unknown(overlap, {"resolution"}, "overlap.");
      if (overlap.contains("resolution")) cfg.resolution = int_at(overlap["resolution"], "overlap.resolution");
    }
    if (file.contains("threads")) {
      const int t = int_at(file["threads"], "threads");
      if (t < 1) throw ConfigError("threads", "must be >= 1");
      cfg.threads = static_cast<unsigned>(t);
    }
    if (file.contains("output")) {
      const json& output = file["output"];
      if (!output.is_object()) throw ConfigError("output", "expected an object");
      reject_unknown(output, {"path", "format"}, "output.");
      if (output.contains("path")) cfg.out = string_at(output["path"], "output.path");
      if (output.contains("format")) cfg.format = string_at(output["format"], "output.format");
    }
  }

  if (ov.gamma) cfg.gamma = *ov.gamma;
  if (ov.theta1) cfg.theta1 = parse_angle(*ov.theta1, "theta1");
  if (ov.theta2) cfg.theta2 = parse_angle(*ov.theta2, "theta2");
  if (ov.theta) cfg.theta = parse_angle(*ov.theta, "theta");
  if (ov.p1) cfg.p1 = *ov.p1;
  if (ov.p2) cfg.p2 = *ov.p2;
  if (ov.window) {
    auto [a, b] = parse_range(*ov.window, "window");
    cfg.window = {a, b};
  }
  if (ov.bins) {
    auto [a, b] = parse_range(*ov.bins, "bins");
    cfg.bins = {a, b};
  }
  if (ov.points) points = *ov.points;
  if (ov.resolution) cfg.resolution = *ov.resolution;
  if (ov.threads) {
    if (*ov.threads < 1) throw ConfigError("threads", "must be >= 1");
    cfg.threads = *ov.threads;
  }
  if (ov.out) cfg.out = *ov.out;
  if (ov.format) cfg.format = *ov.format;

  // Per-command validation.
  auto require_format = [&](std::initializer_list<const char*> allowed) {
    if (cfg.format.empty()) cfg.format = *allowed.begin();
    for (const char* f : allowed) {
      if (cfg.format == f) return;
    }
    throw ConfigError("format", "\"" + cfg.format + "\" is not supported by " + command_name(command));
  };
  auto require_gamma = [&](bool strictly_positive) {
    if (!cfg.gamma) throw ConfigError("gamma", "required by " + command_name(command));
    if (!std::isfinite(*cfg.gamma) || *cfg.gamma < 0.0 || (strictly_positive && *cfg.gamma == 0.0)) {
      throw ConfigError("gamma", strictly_positive ? "must be > 0" : "must be >= 0");
    }
  };
  auto require_pump_indices = [&] {
    if (!cfg.p1) throw ConfigError("p1", "required by " + command_name(command));
    if (!cfg.p2) throw ConfigError("p2", "required by " + command_name(command));
    if (*cfg.p1 == *cfg.p2) throw ConfigError("p2", "p1 and p2 must differ");
    if (!(cfg.amplitude > 0.0)) throw ConfigError("pump.amplitude", "must be > 0");
  };
  auto require_angles = [&] {
    if (!cfg.theta1) throw ConfigError("theta1", "required by " + command_name(command));
    if (!cfg.theta2) throw ConfigError("theta2", "required by " + command_name(command));
  };
  auto require_window = [&] {
    try {
      cfg.window.validate();
    } catch (const InvalidArgument& e) {
      throw ConfigError("window", e.what());
    }
  };
  auto require_bins = [&] {
    try {
      cfg.bins.validate();
    } catch (const InvalidArgument& e) {
      throw ConfigError("bins", e.what());
    }
  };

  switch (command) {
    case Command::ppt_scan:
      require_gamma(true);
      if (points) {
        if (*points < 2) throw ConfigError("points", "must be >= 2");
        cfg.theta_grid = default_theta_grid(*points);
      }
      if (cfg.theta_grid.empty()) cfg.theta_grid = default_theta_grid();
      require_format({"csv"});
      break;
    case Command::supermodes:
      require_gamma(false);
      if (!cfg.theta) throw ConfigError("theta", "required by supermodes");
      require_format({"csv"});
      break;
    case Command::dual_rail:
      require_pump_indices();
      require_angles();
      require_window();
      if (cfg.has_schedule()) throw ConfigError("schedule", "only valid for time-varying");
      require_format({"json", "dot"});
      break;
    case Command::lattice:
      require_pump_indices();
      require_angles();
      require_window();
      require_bins();
      if (cfg.has_schedule()) throw ConfigError("schedule", "only valid for time-varying");
      require_format({"json", "dot"});
      break;
    case Command::time_varying:
      require_pump_indices();
      require_window();
      require_bins();
      if (!cfg.has_schedule()) throw ConfigError("schedule", "required by time-varying");
      try {
        const PumpSpec pump = cfg.pump();
        for (int k = cfg.bins.k_min; k <= cfg.bins.k_max; ++k) edge_weights_at(pump, k);
      } catch (const InvalidArgument& e) {
        throw ConfigError("schedule", e.what());
      }
      require_format({"json", "dot"});
      break;
    case Command::overlap:
      if (cfg.resolution < kMinOverlapResolution) {
        throw ConfigError("resolution", "must be >= " + std::to_string(kMinOverlapResolution));
      }
      require_format({"csv"});
      break;
  }
  return cfg;
}

}  // namespace cvc::cli

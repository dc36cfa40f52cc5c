#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polder/atom.hpp"
#include "polder/medium.hpp"
#include "polder/quadrature.hpp"

namespace polder {

//! Evaluation grid; scale is "linear" or "log" (log requires min > 0).
struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  int count = 1;
  bool log_scale = false;

  void validate() const; // throws ConfigError
  std::vector<double> points() const;
};

//! Parsed run configuration shared by all CLI subcommands.
struct RunConfig {
  LorentzMedium medium;
  AtomModel atom;
  bool has_atom = false;
  std::optional<GridSpec> distances;
  std::optional<GridSpec> frequencies;
  std::string format = "csv"; // csv | json
  QuadratureConfig quadrature;
  nlohmann::json mode; // subcommand payload, passed through verbatim

  nlohmann::json to_json() const;
};

RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);

} // namespace polder

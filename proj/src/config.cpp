#include "polder/config.hpp"

#include <cmath>
#include <fstream>

#include "polder/errors.hpp"

namespace polder {

using nlohmann::json;

void GridSpec::validate() const {
  if (count < 1) throw ConfigError("grid: count must be >= 1");
  if (count > 1 && !(min < max)) throw ConfigError("grid: requires min < max");
  if (log_scale && !(min > 0.0))
    throw ConfigError("grid: log scale requires min > 0");
  if (!std::isfinite(min) || !std::isfinite(max))
    throw ConfigError("grid: non-finite bound");
}

std::vector<double> GridSpec::points() const {
  validate();
  std::vector<double> p;
  p.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    p.push_back(min);
    return p;
  }
  if (log_scale) {
    const double la = std::log(min), lb = std::log(max);
    for (int i = 0; i < count; ++i)
      p.push_back(std::exp(la + (lb - la) * i / (count - 1)));
  } else {
    for (int i = 0; i < count; ++i)
      p.push_back(min + (max - min) * i / (count - 1));
  }
  return p;
}

namespace {

double require_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw ConfigError(std::string("config: missing numeric field '") + key +
                      "'");
  return j[key].get<double>();
}

GridSpec parse_grid(const json& j, const char* what) {
  if (!j.is_object()) throw ConfigError(std::string(what) + ": not an object");
  GridSpec g;
  g.min = require_number(j, "min");
  g.max = j.contains("max") ? j["max"].get<double>() : g.min;
  g.count = j.value("count", 1);
  const std::string scale = j.value("scale", "linear");
  if (scale == "log")
    g.log_scale = true;
  else if (scale == "linear")
    g.log_scale = false;
  else
    throw ConfigError(std::string(what) + ": scale must be linear or log");
  g.validate();
  return g;
}

json grid_to_json(const GridSpec& g) {
  return json{{"min", g.min},
              {"max", g.max},
              {"count", g.count},
              {"scale", g.log_scale ? "log" : "linear"}};
}

AtomModel parse_atom(const json& j) {
  if (!j.contains("levels") || !j["levels"].is_array() ||
      j["levels"].empty())
    throw ConfigError("atom: requires a non-empty 'levels' array");

  AtomModel atom;
  for (const json& l : j["levels"]) {
    if (!l.contains("label") || !l["label"].is_string())
      throw ConfigError("atom: level without a string label");
    atom.add_level(l["label"].get<std::string>(), require_number(l, "omega"));
  }
  if (j.contains("transitions")) {
    for (const json& t : j["transitions"]) {
      const int a = atom.index_of(t.at("from").get<std::string>());
      const int b = atom.index_of(t.at("to").get<std::string>());
      DipoleSq d;
      d.par = t.value("mu_par_sq", 0.0);
      d.perp = t.value("mu_perp_sq", 0.0);
      atom.set_dipole_sq(a, b, d);
    }
  }
  return atom;
}

json atom_to_json(const AtomModel& atom) {
  json levels = json::array();
  for (const Level& l : atom.levels())
    levels.push_back(json{{"label", l.label}, {"omega", l.omega}});
  json transitions = json::array();
  for (int i = 0; i < atom.n_levels(); ++i)
    for (int m = i + 1; m < atom.n_levels(); ++m) {
      const DipoleSq d = atom.dipole_sq(i, m);
      if (d.par == 0.0 && d.perp == 0.0) continue;
      transitions.push_back(json{{"from", atom.level(i).label},
                                 {"to", atom.level(m).label},
                                 {"mu_par_sq", d.par},
                                 {"mu_perp_sq", d.perp}});
    }
  return json{{"levels", levels}, {"transitions", transitions}};
}

} // namespace

RunConfig parse_run_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config: root must be an object");
  if (!j.contains("medium")) throw ConfigError("config: missing 'medium'");

  RunConfig cfg;
  const json& med = j["medium"];
  cfg.medium.omega_T = require_number(med, "omega_T");
  cfg.medium.omega_P = require_number(med, "omega_P");
  cfg.medium.gamma = require_number(med, "gamma");
  try {
    cfg.medium.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  if (j.contains("atom")) {
    cfg.atom = parse_atom(j["atom"]);
    cfg.has_atom = true;
  }
  if (j.contains("distances"))
    cfg.distances = parse_grid(j["distances"], "distances");
  if (j.contains("frequencies"))
    cfg.frequencies = parse_grid(j["frequencies"], "frequencies");

  if (j.contains("output")) {
    cfg.format = j["output"].value("format", "csv");
    if (cfg.format != "csv" && cfg.format != "json")
      throw ConfigError("config: output format must be csv or json");
  }
  if (j.contains("quadrature")) {
    const json& q = j["quadrature"];
    cfg.quadrature.rel_tol = q.value("rel_tol", cfg.quadrature.rel_tol);
    cfg.quadrature.abs_tol = q.value("abs_tol", cfg.quadrature.abs_tol);
    cfg.quadrature.max_subdivisions =
        q.value("max_subdivisions", cfg.quadrature.max_subdivisions);
    cfg.quadrature.tail_cut = q.value("tail_cut", cfg.quadrature.tail_cut);
    cfg.quadrature.oscillatory_threshold = q.value(
        "oscillatory_threshold", cfg.quadrature.oscillatory_threshold);
    try {
      cfg.quadrature.validate();
    } catch (const DomainError& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }
  if (j.contains("mode")) cfg.mode = j["mode"];
  return cfg;
}

nlohmann::json RunConfig::to_json() const {
  json j;
  j["medium"] = json{{"omega_T", medium.omega_T},
                     {"omega_P", medium.omega_P},
                     {"gamma", medium.gamma}};
  if (has_atom) j["atom"] = atom_to_json(atom);
  if (distances) j["distances"] = grid_to_json(*distances);
  if (frequencies) j["frequencies"] = grid_to_json(*frequencies);
  j["output"] = json{{"format", format}};
  j["quadrature"] = json{
      {"rel_tol", quadrature.rel_tol},
      {"abs_tol", quadrature.abs_tol},
      {"max_subdivisions", quadrature.max_subdivisions},
      {"tail_cut", quadrature.tail_cut},
      {"oscillatory_threshold", quadrature.oscillatory_threshold}};
  if (!mode.is_null()) j["mode"] = mode;
  return j;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: parse error: ") + e.what());
  }
  return parse_run_config(j);
}

} // namespace polder

#include "polder/output.hpp"

#include <cstdio>

#include "polder/errors.hpp"

namespace polder {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const Table& t, std::ostream& out) {
  for (const auto& [key, value] : t.meta)
    out << "# " << key << " = " << value << "\n";
  for (std::size_t c = 0; c < t.columns.size(); ++c)
    out << (c ? "," : "") << t.columns[c];
  out << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      out << (c ? "," : "") << format_double(row[c]);
    out << "\n";
  }
}

void write_json(const Table& t, std::ostream& out) {
  nlohmann::json j;
  j["meta"] = nlohmann::json::object();
  for (const auto& [key, value] : t.meta) j["meta"][key] = value;
  j["columns"] = t.columns;
  j["rows"] = t.rows;
  out << j.dump(2) << "\n";
}

void write_table(const Table& t, const std::string& format,
                 std::ostream& out) {
  if (format == "csv")
    write_csv(t, out);
  else if (format == "json")
    write_json(t, out);
  else
    throw ConfigError("write_table: unknown format '" + format + "'");
}

Table parse_table_json(const nlohmann::json& j) {
  Table t;
  if (j.contains("meta"))
    for (const auto& [key, value] : j["meta"].items())
      t.meta.emplace_back(key, value.get<std::string>());
  t.columns = j.at("columns").get<std::vector<std::string>>();
  t.rows = j.at("rows").get<std::vector<std::vector<double>>>();
  return t;
}

} // namespace polder

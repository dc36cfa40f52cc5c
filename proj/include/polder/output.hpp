#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace polder {

//! Column-ordered numeric table with self-describing metadata. CSV output
//! carries the metadata as '#'-prefixed header lines; JSON output carries a
//! 'meta' object plus a 'rows' array. Doubles are printed with 17 significant
//! digits so re-ingestion is lossless.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> meta;

  void add_meta(const std::string& key, const std::string& value) {
    meta.emplace_back(key, value);
  }
};

void write_csv(const Table& t, std::ostream& out);
void write_json(const Table& t, std::ostream& out);
void write_table(const Table& t, const std::string& format, std::ostream& out);

//! Re-ingests a table emitted by write_json (round-trip support).
Table parse_table_json(const nlohmann::json& j);

std::string format_double(double v);

} // namespace polder

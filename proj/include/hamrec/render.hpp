#pragma once

// Rendering of table artifacts and reports: JSON (schema_version 1),
// RFC 4180 CSV (CRLF line endings, quoted cells where needed), and
// GitHub-flavored markdown. All output is deterministic byte-for-byte for
// identical inputs.

#include "hamrec/tables.hpp"

#include <json.hpp>

#include <string>

namespace hamrec {

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline nlohmann::ordered_json tolerances_json(const Tolerances& tol) {
  return nlohmann::ordered_json{{"rank_rel", tol.rank_rel},
                                {"cluster_rel", tol.cluster_rel},
                                {"proj", tol.proj},
                                {"row_rel", tol.row_rel},
                                {"kernel_rel", tol.kernel_rel}};
}

inline nlohmann::ordered_json provenance_json(const TableArtifact& art) {
  nlohmann::ordered_json p;
  p["version"] = kVersion;
  p["randomized"] = art.randomized;
  if (art.randomized) {
    p["seed"] = art.seed;
    p["trials"] = art.trials;
  }
  p["tolerances"] = tolerances_json(art.tol);
  return p;
}

inline std::string csv_escape(const std::string& cell) {
  const bool needs_quotes = cell.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs_quotes) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

inline nlohmann::ordered_json artifact_json(const TableArtifact& art) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "table";
  j["id"] = art.id;
  j["title"] = art.title;
  j["provenance"] = detail::provenance_json(art);
  j["columns"] = art.columns;
  j["rows"] = art.rows;
  return j;
}

inline std::string render_json(const TableArtifact& art) {
  return artifact_json(art).dump(2) + "\n";
}

inline std::string render_csv(const TableArtifact& art) {
  std::string out;
  for (size_t i = 0; i < art.columns.size(); ++i) {
    if (i) out += ",";
    out += detail::csv_escape(art.columns[i]);
  }
  out += "\r\n";
  for (const auto& row : art.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += detail::csv_escape(row[i]);
    }
    out += "\r\n";
  }
  return out;
}

namespace detail {

/// Pipe characters inside a cell would break the table grid.
inline std::string md_escape(const std::string& cell) {
  std::string out;
  for (char c : cell) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace detail

inline std::string render_markdown(const TableArtifact& art) {
  std::string out = "### " + art.title + "\n\n";
  out += "|";
  for (const auto& c : art.columns) out += " " + detail::md_escape(c) + " |";
  out += "\n|";
  for (size_t i = 0; i < art.columns.size(); ++i) out += " --- |";
  out += "\n";
  for (const auto& row : art.rows) {
    out += "|";
    for (const auto& cell : row) out += " " + detail::md_escape(cell) + " |";
    out += "\n";
  }
  return out;
}

inline std::string render(const TableArtifact& art, const std::string& format) {
  if (format == "json") return render_json(art);
  if (format == "csv") return render_csv(art);
  if (format == "md" || format == "markdown") return render_markdown(art);
  fail("render: unknown format '" + format + "' (expected json, csv or md)");
}

}  // namespace hamrec

#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "bdvp/simulator.hpp"

namespace bdvp {

/// Provenance block written as '#' comments at the top of every output
/// file: config echo, artifact version, master seed, wall-clock interval,
/// and an FNV-1a checksum per data row. Only the comments carry
/// timestamps, so the data rows of two runs with the same seed are
/// byte-identical.
struct RunManifest {
  std::vector<std::string> config_lines;
  std::string version;
  std::uint64_t seed = 0;
  std::string started_at;
  std::string finished_at;
};

/// Current time as ISO-8601 UTC, e.g. "2024-05-01T12:00:00Z".
std::string utc_timestamp();

/// The exact column schema of BER result files.
std::string csv_header();

/// One data row; all doubles use shortest round-trip formatting.
std::string csv_row(const SimConfig& config, const BerRecord& record);

/// Comment header, checksum lines, schema row, then the data rows.
void write_csv(std::ostream& out, const RunManifest& manifest,
               const std::vector<std::string>& rows);

/// Parsed-back result file: comment lines, schema line, split data rows.
struct CsvTable {
  std::vector<std::string> comments;
  std::string header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(std::istream& in);

}  // namespace bdvp

#include "bdvp/csv.hpp"

#include <cstdio>
#include <ctime>

#include "bdvp/errors.hpp"
#include "bdvp/format.hpp"

namespace bdvp {

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm parts{};
  gmtime_r(&now, &parts);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &parts);
  return std::string(buf);
}

std::string csv_header() {
  return "snr_db,encoder,criterion,n_t,n_u,n_r,modulation,a,m,p,"
         "bits_sent,bit_errors,ber,mean_gamma,mean_evals";
}

std::string csv_row(const SimConfig& config, const BerRecord& record) {
  std::string row;
  row += format_double(record.snr_db);
  row += ',';
  row += encoder_name(record.encoder);
  row += ',';
  row += criterion_name(config.criterion);
  row += ',';
  row += std::to_string(config.dims.n_t);
  row += ',';
  row += std::to_string(config.dims.n_u);
  row += ',';
  row += std::to_string(config.dims.n_r);
  row += ',';
  row += modulation_name(config.modulation);
  row += ',';
  row += std::to_string(config.a);
  row += ',';
  row += std::to_string(config.effective_m());
  row += ',';
  row += std::to_string(config.p);
  row += ',';
  row += std::to_string(record.bits_sent);
  row += ',';
  row += std::to_string(record.bit_errors);
  row += ',';
  row += format_double(record.ber);
  row += ',';
  row += format_double(record.mean_gamma);
  row += ',';
  row += format_double(record.mean_evals);
  return row;
}

void write_csv(std::ostream& out, const RunManifest& manifest,
               const std::vector<std::string>& rows) {
  out << "# bdvp ber results\n";
  out << "# version: " << manifest.version << "\n";
  out << "# seed: " << manifest.seed << "\n";
  out << "# started: " << manifest.started_at << "\n";
  out << "# finished: " << manifest.finished_at << "\n";
  for (const std::string& line : manifest.config_lines) {
    out << "# config: " << line << "\n";
  }
  char hex[17];
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(fnv1a(rows[i])));
    out << "# record_checksum: " << i << " " << hex << "\n";
  }
  out << csv_header() << "\n";
  for (const std::string& row : rows) out << row << "\n";
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      table.comments.push_back(line);
      continue;
    }
    if (!have_header) {
      table.header = line;
      have_header = true;
      continue;
    }
    table.rows.push_back(split_list(line));
  }
  return table;
}

}  // namespace bdvp

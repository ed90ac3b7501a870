#include "bdvp/config_file.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "bdvp/errors.hpp"
#include "bdvp/format.hpp"

namespace bdvp {

namespace {

std::string trim(const std::string& s) {
  const std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return std::string();
  const std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& path, int line, const std::string& message) {
  throw ConfigError(path + ":" + std::to_string(line) + ": " + message);
}

template <typename T>
T parse_int(const std::string& path, int line, const std::string& key,
            const std::string& value) {
  T out{};
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc() || res.ptr != last) {
    fail(path, line, "value for '" + key + "' is not a valid integer: '" + value + "'");
  }
  return out;
}

double parse_double(const std::string& path, int line, const std::string& key,
                    const std::string& value) {
  double out = 0.0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc() || res.ptr != last) {
    fail(path, line, "value for '" + key + "' is not a valid number: '" + value + "'");
  }
  return out;
}

}  // namespace

SimConfig parse_config(std::istream& in, const std::string& path) {
  SimConfig cfg;
  std::set<std::string> seen;
  std::set<std::string> required = {"n_t", "n_u", "n_r", "snr_list"};

  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string stripped = trim(raw);
    if (stripped.empty() || stripped[0] == '#') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      fail(path, line, "expected key=value, got '" + stripped + "'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) fail(path, line, "empty key");
    if (!seen.insert(key).second) {
      fail(path, line, "duplicate key '" + key + "'");
    }

    try {
      if (key == "n_t") {
        cfg.dims.n_t = parse_int<int>(path, line, key, value);
      } else if (key == "n_u") {
        cfg.dims.n_u = parse_int<int>(path, line, key, value);
      } else if (key == "n_r") {
        cfg.dims.n_r = parse_int<int>(path, line, key, value);
      } else if (key == "modulation") {
        cfg.modulation = modulation_from_name(value);
      } else if (key == "criterion") {
        cfg.criterion = criterion_from_name(value);
      } else if (key == "encoder") {
        cfg.encoder = encoder_from_name(value);
      } else if (key == "a") {
        cfg.a = parse_int<int>(path, line, key, value);
      } else if (key == "m") {
        cfg.m = parse_int<int>(path, line, key, value);
      } else if (key == "p") {
        cfg.p = parse_int<int>(path, line, key, value);
      } else if (key == "snr_list") {
        cfg.snr_list.clear();
        for (const std::string& item : split_list(value)) {
          cfg.snr_list.push_back(parse_double(path, line, key, item));
        }
        if (cfg.snr_list.empty()) fail(path, line, "snr_list must not be empty");
      } else if (key == "min_channel_uses") {
        cfg.min_channel_uses = parse_int<long long>(path, line, key, value);
      } else if (key == "min_bit_errors") {
        cfg.min_bit_errors = parse_int<long long>(path, line, key, value);
      } else if (key == "seed") {
        cfg.seed = parse_int<std::uint64_t>(path, line, key, value);
      } else {
        fail(path, line, "unknown key '" + key + "'");
      }
    } catch (const ParameterError& e) {
      fail(path, line, e.what());
    }
  }

  for (const std::string& key : required) {
    if (!seen.count(key)) {
      throw ConfigError(path + ": missing required key '" + key + "'");
    }
  }
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return cfg;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(path + ": cannot open config file");
  }
  return parse_config(in, path);
}

std::vector<std::string> config_echo(const SimConfig& config) {
  std::vector<std::string> out;
  out.push_back("n_t=" + std::to_string(config.dims.n_t));
  out.push_back("n_u=" + std::to_string(config.dims.n_u));
  out.push_back("n_r=" + std::to_string(config.dims.n_r));
  out.push_back("modulation=" + modulation_name(config.modulation));
  out.push_back("criterion=" + criterion_name(config.criterion));
  out.push_back("encoder=" + encoder_name(config.encoder));
  out.push_back("a=" + std::to_string(config.a));
  out.push_back("m=" + std::to_string(config.m));
  out.push_back("p=" + std::to_string(config.p));
  std::string snrs;
  for (std::size_t i = 0; i < config.snr_list.size(); ++i) {
    if (i) snrs += ",";
    snrs += format_double(config.snr_list[i]);
  }
  out.push_back("snr_list=" + snrs);
  out.push_back("min_channel_uses=" + std::to_string(config.min_channel_uses));
  out.push_back("min_bit_errors=" + std::to_string(config.min_bit_errors));
  out.push_back("seed=" + std::to_string(config.seed));
  return out;
}

}  // namespace bdvp

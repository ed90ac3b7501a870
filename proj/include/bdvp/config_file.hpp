#pragma once

#include <istream>
#include <string>
#include <vector>

#include "bdvp/simulator.hpp"

namespace bdvp {

/// Reads a flat key=value experiment description. Blank lines and lines
/// starting with '#' are ignored. Keys: n_t, n_u, n_r, modulation,
/// criterion, encoder, a, m, p, snr_list, min_channel_uses,
/// min_bit_errors, seed. n_t/n_u/n_r/snr_list are required; everything
/// else has a default. Every diagnostic is anchored as "path:line:".
SimConfig load_config(const std::string& path);

/// Same parser on an already-open stream; `path` is only used in messages.
SimConfig parse_config(std::istream& in, const std::string& path);

/// Canonical one-key-per-line echo of a config, in fixed key order.
std::vector<std::string> config_echo(const SimConfig& config);

}  // namespace bdvp

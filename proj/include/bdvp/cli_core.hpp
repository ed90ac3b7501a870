#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace bdvp {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Options common to the experiment-running subcommands.
struct RunOptions {
  std::string config_path;
  std::string out_path;
  bool seed_override = false;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = all cores
};

/// Parameters of the single-shot encoder front end. Either `lower_entries`
/// (row-major N x N, N = s.size()) or `channel_seed` supplies the search
/// factor; with a seed, an n x n complex Gaussian channel (n = N/2) is
/// drawn and its zero-forcing factor is used.
struct EncodeOptions {
  std::vector<double> lower_entries;
  bool use_channel_seed = false;
  std::uint64_t channel_seed = 0;
  std::vector<double> s;
  double tau = 4.0;
  int a = 1;
  std::string encoder = "exhaustive";
  int m = 0;  // 0 = T
  int p = 1;
};

/// Runs the configured BER sweep and writes the result CSV.
int cmd_simulate(const RunOptions& options, std::ostream& diag);

/// Runs the sweep once per candidate radius in `a_list` (duplicates are
/// dropped with a warning) and writes one merged CSV.
int cmd_sweep_t(const RunOptions& options, const std::vector<int>& a_list,
                std::ostream& diag);

/// Encodes one vector and prints "t=[...] metric=... evals=..." to `out`.
int cmd_encode(const EncodeOptions& options, std::ostream& out,
               std::ostream& diag);

/// Quick invariant suite; prints one pass/fail line per check.
int cmd_selftest(std::ostream& out);

}  // namespace bdvp

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "bdvp/channel.hpp"
#include "bdvp/constellation.hpp"
#include "bdvp/perturbation.hpp"
#include "bdvp/precoder.hpp"

namespace bdvp {

/// Full description of one Monte Carlo experiment.
struct SimConfig {
  SystemDims dims;
  Modulation modulation = Modulation::kQpsk;
  Criterion criterion = Criterion::kZf;
  Encoder encoder = Encoder::kThp;
  int a = 3;  // candidate radius, T = 2a+1
  int m = 0;  // search breadth; 0 defaults to T
  int p = 1;  // full-expansion depth
  std::vector<double> snr_list;
  long long min_channel_uses = 10000;
  long long min_bit_errors = 0;
  std::uint64_t seed = 1;

  int candidate_count() const { return 2 * a + 1; }
  int effective_m() const { return m > 0 ? m : candidate_count(); }
  void validate() const;
};

/// One measured point: everything needed for a CSV row plus bookkeeping.
struct BerRecord {
  double snr_db = 0.0;
  Encoder encoder = Encoder::kThp;
  long long bit_errors = 0;
  long long bits_sent = 0;
  double ber = 0.0;
  double mean_gamma = 0.0;  // average power-normalization factor per user
  double mean_evals = 0.0;  // average candidate evaluations per encode
  long long channel_uses = 0;
  long long degenerate_draws = 0;
};

struct TransmitResult {
  Eigen::VectorXcd x;   // per-user transmit vector, length n_t
  double gamma = 0.0;   // instantaneous power-normalization factor
};

/// Precodes one user's perturbed vector and scales it onto the power
/// budget P = n_r * symbol_energy: u = precode * perturbed, gamma =
/// ||u||^2 / P, x = beamformer * complex(u) / sqrt(gamma). Throws
/// DegenerateInputError when the perturbed vector is zero.
TransmitResult transmit_user(const Eigen::VectorXd& perturbed,
                             const Eigen::MatrixXd& precode,
                             const Eigen::MatrixXcd& beamformer,
                             double symbol_energy);

/// Receiver side of the normalization: scale by sqrt(gamma) (known to the
/// receiver by convention), embed to real, fold back with modulo.
Eigen::VectorXd receive_user(const Eigen::VectorXcd& y, double gamma,
                             double half_range);

/// Hard decision per real dimension followed by the inverse Gray map;
/// bits are emitted MSB-first per dimension, dimensions in vector order.
std::vector<int> demodulate(const Eigen::VectorXd& z,
                            const Constellation& constellation);

/// Monte Carlo BER sweep, one record per SNR point. Realizations are
/// independent work items distributed over OpenMP threads; results are
/// identical for any thread count (each realization owns a counter-based
/// random stream and reduction happens in realization order).
/// threads = 0 uses all available cores.
std::vector<BerRecord> run_ber(const SimConfig& config, int threads = 0);

/// Single-threaded reference implementation with the identical stopping
/// rule and draw discipline; kept for testing and as documentation.
std::vector<BerRecord> run_ber_serial(const SimConfig& config);

}  // namespace bdvp

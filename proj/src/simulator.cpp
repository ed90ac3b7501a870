#include "bdvp/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bdvp/bd.hpp"
#include "bdvp/errors.hpp"

namespace bdvp {

namespace {

// Per-realization tallies; aggregated strictly in realization order so that
// serial and parallel runs produce bit-identical sums.
struct RealizationOutcome {
  long long bit_errors = 0;
  long long bits = 0;
  double gamma_sum = 0.0;
  long long evals = 0;
  long long encodes = 0;
  bool degenerate = false;
};

struct PointTotals {
  long long attempts = 0;
  long long uses = 0;
  long long bit_errors = 0;
  long long bits = 0;
  long long degenerate = 0;
  long long evals = 0;
  long long encodes = 0;
  double gamma_sum = 0.0;
};

void accumulate(PointTotals& totals, const RealizationOutcome& r) {
  if (r.degenerate) {
    ++totals.degenerate;
    return;
  }
  ++totals.uses;
  totals.bit_errors += r.bit_errors;
  totals.bits += r.bits;
  totals.evals += r.evals;
  totals.encodes += r.encodes;
  totals.gamma_sum += r.gamma_sum;
}

// Stop once the minimum sample size is reached and either enough errors
// were observed or the hard cap of 100x the minimum exhausted the budget.
bool point_done(const SimConfig& cfg, const PointTotals& t) {
  const long long cap = 100 * cfg.min_channel_uses;
  if (t.attempts >= cap) return true;
  return t.uses >= cfg.min_channel_uses && t.bit_errors >= cfg.min_bit_errors;
}

BerRecord make_record(const SimConfig& cfg, double snr_db,
                      const PointTotals& t) {
  if (t.attempts > 0 && t.degenerate * 1000 > t.attempts) {
    throw DegenerateChannelError(
        "run_ber: degenerate channel draws exceed 0.1% of attempts (" +
        std::to_string(t.degenerate) + "/" + std::to_string(t.attempts) + ")");
  }
  BerRecord rec;
  rec.snr_db = snr_db;
  rec.encoder = cfg.encoder;
  rec.bit_errors = t.bit_errors;
  rec.bits_sent = t.bits;
  rec.ber = t.bits > 0 ? static_cast<double>(t.bit_errors) / static_cast<double>(t.bits) : 0.0;
  rec.mean_gamma = t.encodes > 0 ? t.gamma_sum / static_cast<double>(t.encodes) : 0.0;
  rec.mean_evals = t.encodes > 0 ? static_cast<double>(t.evals) / static_cast<double>(t.encodes) : 0.0;
  rec.channel_uses = t.uses;
  rec.degenerate_draws = t.degenerate;
  return rec;
}

// One block-fading channel use: fresh channel, fresh data, fresh noise.
// All randomness comes from a stream owned by this (snr, realization)
// pair, drawn in a fixed order (channel entries, then data bits, then
// noise) that does not depend on encoder or criterion, so runs that differ
// only in the encoder see identical channels, data and noise.
RealizationOutcome simulate_realization(const SimConfig& cfg,
                                        const Constellation& cons,
                                        const CandidateSet& set, double sigma2,
                                        std::uint64_t snr_index,
                                        long long realization) {
  Philox rng(cfg.seed, snr_index, static_cast<std::uint64_t>(realization));
  RealizationOutcome out;
  const SystemDims& dims = cfg.dims;
  const int n = dims.search_dim();
  const int bits_per_dim = cons.bits_per_dimension();
  const double tau = cons.tau();
  const double power = dims.n_r * cons.symbol_energy();

  StackedChannel h = draw_channel(dims, rng);

  // Data bits, one block of bits_per_dim per real dimension, users in order.
  std::vector<std::vector<int>> sent_bits(dims.n_u);
  std::vector<Eigen::VectorXd> symbols(dims.n_u);
  for (int u = 0; u < dims.n_u; ++u) {
    sent_bits[u].resize(static_cast<std::size_t>(n) * bits_per_dim);
    symbols[u].resize(n);
    for (int d = 0; d < n; ++d) {
      unsigned word = 0;
      for (int b = 0; b < bits_per_dim; ++b) {
        const int bit = rng.next_bit();
        sent_bits[u][static_cast<std::size_t>(d) * bits_per_dim + b] = bit;
        word = (word << 1) | static_cast<unsigned>(bit);
      }
      symbols[u](d) = cons.symbol_from_bits(word);
    }
  }

  // Precoding consumes no randomness; a degenerate draw skips the
  // realization entirely (counted by the caller).
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(dims.n_t);
  std::vector<double> gammas(dims.n_u, 0.0);
  BdResult bd;
  try {
    bd = block_diagonalize(h);
    const double alpha =
        cfg.criterion == Criterion::kMmse ? mmse_alpha(n, sigma2, power) : 0.0;
    for (int u = 0; u < dims.n_u; ++u) {
      const Eigen::MatrixXd h_r = complex_to_real(bd.effective_channels[u]);
      const SearchFactor factor = search_factor(h_r, cfg.criterion, alpha, tau);
      const PerturbationResult enc =
          encode(cfg.encoder, factor.lower, symbols[u], tau, set,
                 cfg.effective_m(), cfg.p);
      out.evals += enc.evals;
      ++out.encodes;
      const TransmitResult tx = transmit_user(enc.perturbed, factor.precode,
                                              bd.beamformers[u],
                                              cons.symbol_energy());
      gammas[u] = tx.gamma;
      out.gamma_sum += tx.gamma;
      x += tx.x;
    }
  } catch (const DegenerateChannelError&) {
    out.degenerate = true;
    return out;
  } catch (const SingularMatrixError&) {
    out.degenerate = true;
    return out;
  }

  for (int u = 0; u < dims.n_u; ++u) {
    Eigen::VectorXcd y = user_submatrix(h, u + 1) * x;
    for (int r = 0; r < dims.n_r; ++r) y(r) += rng.next_cgaussian(sigma2);
    const Eigen::VectorXd z = receive_user(y, gammas[u], cons.half_range());
    const std::vector<int> decided = demodulate(z, cons);
    for (std::size_t i = 0; i < decided.size(); ++i) {
      out.bit_errors += decided[i] != sent_bits[u][i];
    }
    out.bits += static_cast<long long>(decided.size());
  }
  return out;
}

std::vector<BerRecord> run_sweep(const SimConfig& cfg, int threads,
                                 bool parallel) {
  cfg.validate();
  const Constellation cons(cfg.modulation);
  const CandidateSet set(cfg.a);

#ifdef _OPENMP
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#else
  (void)threads;
#endif

  std::vector<BerRecord> records;
  records.reserve(cfg.snr_list.size());
  for (std::size_t si = 0; si < cfg.snr_list.size(); ++si) {
    const double snr_db = cfg.snr_list[si];
    const double sigma2 =
        cons.symbol_energy() * std::pow(10.0, -snr_db / 10.0);
    const long long cap = 100 * cfg.min_channel_uses;

    PointTotals totals;
    std::vector<RealizationOutcome> slots;
    while (totals.attempts < cap) {
      const long long batch =
          std::min(cfg.min_channel_uses, cap - totals.attempts);
      slots.assign(static_cast<std::size_t>(batch), RealizationOutcome{});
      if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nthreads)
#endif
        for (long long k = 0; k < batch; ++k) {
          slots[static_cast<std::size_t>(k)] = simulate_realization(
              cfg, cons, set, sigma2, si, totals.attempts + k);
        }
      } else {
        for (long long k = 0; k < batch; ++k) {
          slots[static_cast<std::size_t>(k)] = simulate_realization(
              cfg, cons, set, sigma2, si, totals.attempts + k);
        }
      }
      // In-order reduction: the only floating-point accumulation across
      // realizations, deliberately serial for reproducibility.
      for (const RealizationOutcome& r : slots) accumulate(totals, r);
      totals.attempts += batch;
      if (point_done(cfg, totals)) break;
    }
    records.push_back(make_record(cfg, snr_db, totals));
  }
  return records;
}

}  // namespace

void SimConfig::validate() const {
  dims.validate();
  if (a < 0) {
    throw ParameterError("SimConfig: candidate radius a must be non-negative");
  }
  if (m < 0) {
    throw ParameterError("SimConfig: breadth m must be non-negative (0 = T)");
  }
  if (p < 1 || p > dims.search_dim()) {
    throw ParameterError("SimConfig: expansion depth p must lie in 1.." +
                         std::to_string(dims.search_dim()));
  }
  if (snr_list.empty()) {
    throw ParameterError("SimConfig: snr_list must not be empty");
  }
  if (min_channel_uses < 1) {
    throw ParameterError("SimConfig: min_channel_uses must be at least 1");
  }
  if (min_bit_errors < 0) {
    throw ParameterError("SimConfig: min_bit_errors must be non-negative");
  }
}

TransmitResult transmit_user(const Eigen::VectorXd& perturbed,
                             const Eigen::MatrixXd& precode,
                             const Eigen::MatrixXcd& beamformer,
                             double symbol_energy) {
  if (precode.cols() != perturbed.size()) {
    throw DimensionError("transmit_user: precoder/vector size mismatch");
  }
  if (2 * beamformer.cols() != precode.rows()) {
    throw DimensionError(
        "transmit_user: beamformer width does not match precoder output");
  }
  if (!(symbol_energy > 0.0)) {
    throw ParameterError("transmit_user: symbol energy must be positive");
  }
  const Eigen::VectorXd u = precode * perturbed;
  const double power = static_cast<double>(beamformer.cols()) * symbol_energy;
  const double gamma = u.squaredNorm() / power;
  if (!(gamma > 0.0)) {
    throw DegenerateInputError("transmit_user: zero perturbed vector");
  }
  TransmitResult out;
  out.gamma = gamma;
  out.x = beamformer * (real_to_complex(u) / std::sqrt(gamma));
  return out;
}

Eigen::VectorXd receive_user(const Eigen::VectorXcd& y, double gamma,
                             double half_range) {
  if (!(gamma > 0.0)) {
    throw ParameterError("receive_user: gamma must be positive");
  }
  return modulo(complex_to_real(Eigen::VectorXcd(std::sqrt(gamma) * y)),
                half_range);
}

std::vector<int> demodulate(const Eigen::VectorXd& z,
                            const Constellation& constellation) {
  const int bits_per_dim = constellation.bits_per_dimension();
  std::vector<int> bits;
  bits.reserve(static_cast<std::size_t>(z.size()) * bits_per_dim);
  for (Eigen::Index d = 0; d < z.size(); ++d) {
    const unsigned word = constellation.bits_from_symbol(constellation.slice(z(d)));
    for (int b = bits_per_dim - 1; b >= 0; --b) {
      bits.push_back(static_cast<int>((word >> b) & 1u));
    }
  }
  return bits;
}

std::vector<BerRecord> run_ber(const SimConfig& config, int threads) {
  return run_sweep(config, threads, true);
}

std::vector<BerRecord> run_ber_serial(const SimConfig& config) {
  return run_sweep(config, 1, false);
}

}  // namespace bdvp

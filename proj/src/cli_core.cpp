#include "bdvp/cli_core.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "bdvp/bd.hpp"
#include "bdvp/channel.hpp"
#include "bdvp/config_file.hpp"
#include "bdvp/constellation.hpp"
#include "bdvp/csv.hpp"
#include "bdvp/errors.hpp"
#include "bdvp/format.hpp"
#include "bdvp/perturbation.hpp"
#include "bdvp/precoder.hpp"
#include "bdvp/rng.hpp"
#include "bdvp/simulator.hpp"
#include "bdvp/version.hpp"

namespace bdvp {

namespace {

void write_output_file(const std::string& path, const RunManifest& manifest,
                       const std::vector<std::string>& rows) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot open output file: " + path);
  }
  write_csv(out, manifest, rows);
  out.flush();
  if (!out) {
    throw Error("failed while writing output file: " + path);
  }
}

Eigen::MatrixXd random_real_matrix(int rows, int cols, Philox& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = rng.next_gaussian();
  }
  return m;
}

Eigen::MatrixXcd random_complex_matrix(int rows, int cols, Philox& rng) {
  Eigen::MatrixXcd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = rng.next_cgaussian(1.0);
  }
  return m;
}

}  // namespace

int cmd_simulate(const RunOptions& options, std::ostream& diag) {
  try {
    SimConfig cfg = load_config(options.config_path);
    if (options.seed_override) cfg.seed = options.seed;

    RunManifest manifest;
    manifest.config_lines = config_echo(cfg);
    manifest.version = kVersion;
    manifest.seed = cfg.seed;
    manifest.started_at = utc_timestamp();

    const std::vector<BerRecord> records = run_ber(cfg, options.threads);
    manifest.finished_at = utc_timestamp();

    std::vector<std::string> rows;
    rows.reserve(records.size());
    for (const BerRecord& rec : records) rows.push_back(csv_row(cfg, rec));
    write_output_file(options.out_path, manifest, rows);
    return kExitOk;
  } catch (const ConfigError& e) {
    diag << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

int cmd_sweep_t(const RunOptions& options, const std::vector<int>& a_list,
                std::ostream& diag) {
  try {
    if (a_list.empty()) {
      throw ConfigError("sweep-t: a_list must not be empty");
    }
    std::vector<int> unique_a;
    for (int a : a_list) {
      if (std::find(unique_a.begin(), unique_a.end(), a) != unique_a.end()) {
        diag << "warning: duplicate a=" << a << " ignored\n";
        continue;
      }
      unique_a.push_back(a);
    }

    SimConfig base = load_config(options.config_path);
    if (options.seed_override) base.seed = options.seed;

    RunManifest manifest;
    manifest.config_lines = config_echo(base);
    std::string sweep_line = "sweep_a=";
    for (std::size_t i = 0; i < unique_a.size(); ++i) {
      if (i) sweep_line += ",";
      sweep_line += std::to_string(unique_a[i]);
    }
    manifest.config_lines.push_back(sweep_line);
    manifest.version = kVersion;
    manifest.seed = base.seed;
    manifest.started_at = utc_timestamp();

    std::vector<std::string> rows;
    for (int a : unique_a) {
      SimConfig cfg = base;
      cfg.a = a;
      cfg.validate();
      const std::vector<BerRecord> records = run_ber(cfg, options.threads);
      for (const BerRecord& rec : records) rows.push_back(csv_row(cfg, rec));
    }
    manifest.finished_at = utc_timestamp();
    write_output_file(options.out_path, manifest, rows);
    return kExitOk;
  } catch (const ConfigError& e) {
    diag << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParameterError& e) {
    diag << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

int cmd_encode(const EncodeOptions& options, std::ostream& out,
               std::ostream& diag) {
  try {
    const int n = static_cast<int>(options.s.size());
    if (n == 0) {
      throw ParameterError("encode: s must not be empty");
    }
    Eigen::VectorXd s(n);
    for (int i = 0; i < n; ++i) s(i) = options.s[static_cast<std::size_t>(i)];

    Eigen::MatrixXd lower;
    if (!options.lower_entries.empty() && options.use_channel_seed) {
      throw ParameterError("encode: give either a factor or a channel seed, not both");
    }
    if (!options.lower_entries.empty()) {
      if (static_cast<int>(options.lower_entries.size()) != n * n) {
        throw DimensionError("encode: factor needs " + std::to_string(n * n) +
                             " row-major entries for a length-" +
                             std::to_string(n) + " vector, got " +
                             std::to_string(options.lower_entries.size()));
      }
      lower.resize(n, n);
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
          lower(r, c) = options.lower_entries[static_cast<std::size_t>(r) * n + c];
        }
      }
    } else if (options.use_channel_seed) {
      if (n % 2 != 0) {
        throw DimensionError("encode: channel-seed mode needs an even-length s "
                             "(real embedding of a complex channel)");
      }
      Philox rng(options.channel_seed);
      const Eigen::MatrixXcd h = random_complex_matrix(n / 2, n / 2, rng);
      lower = search_factor(complex_to_real(h), Criterion::kZf, 0.0,
                            options.tau).lower;
    } else {
      throw ParameterError("encode: either a factor or a channel seed is required");
    }

    const Encoder encoder = encoder_from_name(options.encoder);
    const CandidateSet set(options.a);
    const int m = options.m > 0 ? options.m : set.size();
    const PerturbationResult result =
        encode(encoder, lower, s, options.tau, set, m, options.p);

    out << "t=[";
    for (int i = 0; i < result.t.size(); ++i) {
      if (i) out << ",";
      out << result.t(i);
    }
    out << "] metric=" << format_double(result.metric)
        << " evals=" << result.evals << "\n";
    return kExitOk;
  } catch (const DimensionError& e) {
    diag << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParameterError& e) {
    diag << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SearchSpaceError& e) {
    diag << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

int cmd_selftest(std::ostream& out) {
  bool all_ok = true;
  const auto report = [&](const char* name, bool ok) {
    out << (ok ? "[pass] " : "[FAIL] ") << name << "\n";
    all_ok = all_ok && ok;
  };

  // Beamformers kill inter-user interference and stay orthonormal.
  {
    bool ok = true;
    const SystemDims layouts[] = {{8, 2, 4}, {8, 4, 2}, {4, 2, 2}};
    Philox rng(0xB0);
    for (const SystemDims& dims : layouts) {
      for (int trial = 0; trial < 20 && ok; ++trial) {
        const StackedChannel h = draw_channel(dims, rng);
        const BdResult bd = block_diagonalize(h);
        ok = verify_block_diagonal(h, bd.composite, 1e-9).ok;
        for (const Eigen::MatrixXcd& b : bd.beamformers) {
          const Eigen::MatrixXcd gram = b.adjoint() * b;
          ok = ok && (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols()))
                             .norm() <= 1e-10;
        }
      }
    }
    report("block diagonalization: zero inter-user interference", ok);
  }

  // Triangular factors reproduce the inverse-channel norms.
  {
    bool ok = true;
    Philox rng(0xFAC);
    for (int trial = 0; trial < 20 && ok; ++trial) {
      const Eigen::MatrixXd h = random_real_matrix(8, 8, rng);
      const Eigen::VectorXd x = random_real_matrix(8, 1, rng);
      const SearchFactor zf = search_factor(h, Criterion::kZf, 0.0, 4.0);
      const double lhs = (zf.lower * x).norm();
      const double rhs = h.partialPivLu().solve(x).norm();
      ok = std::abs(lhs - rhs) <= 1e-9 * rhs;

      const double alpha = 0.05;
      const SearchFactor mmse = search_factor(h, Criterion::kMmse, alpha, 4.0);
      const double q = (mmse.lower * x).squaredNorm();
      const Eigen::MatrixXd gram =
          h * h.transpose() + alpha * Eigen::MatrixXd::Identity(8, 8);
      const double ref = alpha * x.dot(gram.llt().solve(x));
      ok = ok && std::abs(q - ref) <= 1e-8 * std::abs(ref);
    }
    report("search factors: norm identities (zf, mmse)", ok);
  }

  // Fixed-complexity encoders never beat the exhaustive oracle.
  {
    bool ok = true;
    Philox rng(0xD0);
    const CandidateSet set(1);
    const double tau = 4.0;
    for (int trial = 0; trial < 100 && ok; ++trial) {
      const Eigen::MatrixXcd h = random_complex_matrix(2, 2, rng);
      const SearchFactor factor =
          search_factor(complex_to_real(h), Criterion::kZf, 0.0, tau);
      Eigen::VectorXd s(4);
      for (int i = 0; i < 4; ++i) s(i) = rng.next_bit() ? 1.0 : -1.0;
      const double oracle =
          exhaustive_encode(factor.lower, s, tau, set).metric;
      ok = thp_encode(factor.lower, s, tau, set).metric >= oracle &&
           fse_encode(factor.lower, s, tau, set, 1).metric >= oracle &&
           qrdm_encode(factor.lower, s, tau, set, set.size()).metric >= oracle;
    }
    report("perturbation: oracle dominance", ok);
  }

  // Modulo removes every admissible perturbation exactly.
  {
    bool ok = true;
    for (Modulation m : {Modulation::kQpsk, Modulation::kQam16}) {
      const Constellation cons(m);
      for (int sym : cons.alphabet()) {
        for (int t = -20; t <= 20; ++t) {
          const double folded =
              modulo(sym + cons.tau() * t, cons.half_range());
          ok = ok && std::abs(folded - sym) <= 1e-12;
        }
      }
    }
    report("constellation: modulo/tau round trip", ok);
  }

  // Evaluation counters match the closed-form predictions.
  {
    bool ok = eval_count(Encoder::kQrdm, 3, 3, 3) == 21 &&
              eval_count(Encoder::kThp, 8, 7) == 56;
    Philox rng(0xEC);
    const Eigen::MatrixXcd h = random_complex_matrix(2, 2, rng);
    const SearchFactor factor =
        search_factor(complex_to_real(h), Criterion::kZf, 0.0, 4.0);
    Eigen::VectorXd s(4);
    for (int i = 0; i < 4; ++i) s(i) = rng.next_bit() ? 1.0 : -1.0;
    const CandidateSet set(1);
    ok = ok &&
         thp_encode(factor.lower, s, 4.0, set).evals ==
             eval_count(Encoder::kThp, 4, 3) &&
         fse_encode(factor.lower, s, 4.0, set, 2).evals ==
             eval_count(Encoder::kFse, 4, 3, 1, 2) &&
         qrdm_encode(factor.lower, s, 4.0, set, 2).evals ==
             eval_count(Encoder::kQrdm, 4, 3, 2) &&
         exhaustive_encode(factor.lower, s, 4.0, set).evals ==
             eval_count(Encoder::kExhaustive, 4, 3);
    report("perturbation: evaluation counts", ok);
  }

  out << (all_ok ? "selftest: all checks passed\n"
                 : "selftest: FAILURES detected\n");
  return all_ok ? kExitOk : kExitRuntime;
}

}  // namespace bdvp
